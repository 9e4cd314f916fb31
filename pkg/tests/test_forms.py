import pytest
from hypothesis import given, strategies as st

from f2reducts.errors import DegenerateForm, DependentInput, DimensionMismatch, GramMismatch
from f2reducts.forms import (
    BilinForm, dot, dot_table, format_form, gram_of, hyperbolic_basis, parse_form,
    standard_form, witt_extend,
)
from f2reducts.gf2 import Vec2, independent_bits
from f2reducts.stdgroups import sp_gens
from f2reducts.perm import member


def e(n, i):
    return Vec2.unit(n, i)


def test_dot_examples(F4):
    assert dot(F4, e(4, 1), e(4, 2)) == 1
    assert dot(F4, e(4, 1), e(4, 3)) == 0
    for x in range(16):
        assert dot(F4, Vec2(4, x), Vec2(4, x)) == 0
    with pytest.raises(DimensionMismatch):
        dot(F4, e(3, 1), e(4, 1))


def test_dot_table_matches_pointwise(F4):
    D = dot_table(F4)
    assert all(D[x, y] == F4.dot_bits(x, y) for x in range(16) for y in range(16))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_standard_form(m):
    F = standard_form(m)
    assert F.dim == 2 * m and F.nondegenerate
    assert F.entry(0, 1) == 1 and F.entry(1, 0) == 1


def test_form_validation():
    with pytest.raises(ValueError):
        BilinForm.from_matrix([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        BilinForm.from_matrix([[0, 1], [0, 0]])
    assert not BilinForm.zero(3).nondegenerate
    assert len(BilinForm.from_matrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]]).radical()) == 1


@pytest.mark.parametrize("m", [1, 2, 3])
def test_hyperbolic_basis(m):
    F = standard_form(m)
    pairs = hyperbolic_basis(F)
    flat = [x for p in pairs for x in p]
    assert independent_bits(flat) and len(pairs) == m
    for i, (u, v) in enumerate(pairs):
        assert F.dot_bits(u, v) == 1
        for j, (x, y) in enumerate(pairs):
            if i != j:
                assert F.dot_bits(u, x) == F.dot_bits(u, y) == F.dot_bits(v, x) == F.dot_bits(v, y) == 0
    with pytest.raises(DegenerateForm):
        hyperbolic_basis(BilinForm.zero(2))


def test_witt_extend_examples(F4):
    g = witt_extend(F4, [e(4, 1)], [e(4, 3)])
    assert g(1) == 4
    assert member(sp_gens(F4), g)
    with pytest.raises(GramMismatch):
        witt_extend(F4, [e(4, 1), e(4, 2)], [e(4, 1), e(4, 3)])
    with pytest.raises(DependentInput):
        witt_extend(F4, [e(4, 1), e(4, 1)], [e(4, 1), e(4, 1)])


@given(st.data())
def test_witt_extend_property(data):
    F = standard_form(3)
    k = data.draw(st.integers(1, 3))
    src = data.draw(st.lists(st.integers(1, 63), min_size=k, max_size=k, unique=True))
    dst = data.draw(st.lists(st.integers(1, 63), min_size=k, max_size=k, unique=True))
    if not independent_bits(src) or not independent_bits(dst) or gram_of(F, src) != gram_of(F, dst):
        return
    g = witt_extend(F, [Vec2(6, x) for x in src], [Vec2(6, x) for x in dst])
    assert [g(x) for x in src] == dst
    D = dot_table(F)
    img = g.images
    assert (D[img][:, img] == D).all()


def test_form_file_roundtrip(F6):
    assert parse_form(format_form(F6)) == F6
