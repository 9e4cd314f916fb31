import pytest
from hypothesis import given, strategies as st

from f2reducts.errors import DimensionMismatch
from f2reducts.gf2 import (
    Vec2, add, contains, format_tuple, parse_point, solve, sorted_coset, span,
)


def e(n, i):
    return Vec2.unit(n, i)


def naive_closure(bits):
    out = {0}
    for b in bits:
        out |= {x ^ b for x in out}
    return out


def test_add_examples():
    assert add(e(3, 1), e(3, 1)) == Vec2.zero(3)
    assert add(e(3, 1), e(3, 2)).bits == 0b11
    v = Vec2(3, 5)
    assert v + Vec2.zero(3) == v


def test_add_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        add(e(3, 1), e(4, 1))


def test_vec_range_checked():
    with pytest.raises(ValueError):
        Vec2(3, 8)
    with pytest.raises(ValueError):
        Vec2(25, 0)


def test_span_examples():
    S = span([e(3, 1), e(3, 2), e(3, 1) + e(3, 2)])
    assert S.rank == 2 and S.basis == (1, 2)
    assert span([], dim=3).rank == 0


def test_contains_examples():
    S = span([e(3, 1), e(3, 2)])
    assert contains(S, e(3, 1) + e(3, 2))
    assert not contains(S, e(3, 3))
    assert contains(S, Vec2.zero(3))
    with pytest.raises(DimensionMismatch):
        contains(S, e(4, 1))


vec4 = st.integers(0, 15).map(lambda b: Vec2(4, b))


@given(st.lists(vec4, max_size=5))
def test_span_matches_naive_closure(vs):
    S = span(vs, dim=4)
    assert set(S.elements()) == naive_closure([v.bits for v in vs])
    assert S.rank <= 4
    assert span(S.vectors(), dim=4) == S


@given(st.lists(vec4, max_size=5), vec4)
def test_contains_matches_closure(vs, v):
    S = span(vs, dim=4)
    assert contains(S, v) == (v.bits in naive_closure([u.bits for u in vs]))


@given(st.lists(st.integers(0, 31), max_size=6), st.data())
def test_solve_against_brute_force(rows, data):
    b = data.draw(st.lists(st.integers(0, 1), min_size=len(rows), max_size=len(rows)))
    A = [Vec2(5, r) for r in rows]
    brute = [x for x in range(32)
             if all(bin(r & x).count("1") % 2 == bi for r, bi in zip(rows, b))]
    sol = solve(A, b, dim=5)
    if not brute:
        assert sol is None
        return
    got = [v.bits for v in sol]
    assert got == brute  # enumerated in increasing order
    assert sol.count == len(brute)


def test_solve_inconsistent():
    assert solve([e(2, 1), e(2, 1)], [0, 1]) is None


def test_sorted_coset_is_increasing():
    xs = list(sorted_coset(0b1010, [0b0110, 0b0011]))
    assert xs == sorted(xs) and len(set(xs)) == 4


@pytest.mark.parametrize("text,val", [("0x5", 5), ("5", 5), ("e1+e3", 5), ("0", 0), ("e2", 2)])
def test_parse_point(text, val):
    assert parse_point(text, 4) == val


@pytest.mark.parametrize("text", ["", "e0", "x1", "e5"])
def test_parse_point_rejects(text):
    with pytest.raises(ValueError):
        parse_point(text, 4)


def test_format_tuple():
    assert format_tuple([0, 1, 10]) == "0x0,0x1,0xa"
