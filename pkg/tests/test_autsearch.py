import pytest

from f2reducts.autsearch import (
    Structure, automorphisms, fixed_points, parse_structure, pointwise_stabilizer,
)
from f2reducts.errors import BudgetExhausted, DimensionMismatch
from f2reducts.orbits import tuple_orbits
from f2reducts.perm import bfs_order, group_order, member, same_group
from f2reducts.relations import RelSpec, preserves
from f2reducts.stdgroups import agl_gens, delta_gens, gl_gens, sp_gens, sym_gens


def test_aut_p0_is_sp(F4):
    r = automorphisms(Structure(4, (RelSpec.of_form("p0", F4),)))
    assert r.order == 720
    assert same_group(r.group, sp_gens(F4))


def test_aut_nabla(F4):
    r = automorphisms(Structure(4, (RelSpec.of_form("nabla", F4),)))
    assert r.order == 11520
    assert same_group(r.group, delta_gens(F4))


def test_aut_parallelogram_is_agl():
    r = automorphisms(Structure(3, (RelSpec.parallelogram(3),)))
    assert r.order == 1344 == bfs_order(r.group)
    assert same_group(r.group, agl_gens(3))


def test_aut_diamond_fixing_zero(F4):
    r = automorphisms(Structure(4, (RelSpec.of_form("diamond", F4),), fix_zero=True))
    assert r.order == 720 and same_group(r.group, sp_gens(F4))


def test_empty_structure_gives_sym():
    r = automorphisms(Structure(3, ()))
    assert r.order == 40320


def test_generators_preserve_relations(F4):
    rels = (RelSpec.of_form("p1", F4), RelSpec.of_form("nabla", F4))
    r = automorphisms(Structure(4, rels))
    assert all(preserves(g, R) for g in r.group.gens for R in rels)


def test_explicit_relation():
    # a 4-cycle graph on 4 of the 8 points; the rest isolated
    edges = [(1, 2), (2, 3), (3, 4), (4, 1)]
    R = RelSpec.explicit(3, 2, edges + [(b, a) for a, b in edges])
    r = automorphisms(Structure(3, (R,)))
    assert r.order == 8 * 24  # dihedral on the cycle, any map on the other 4 points


@pytest.mark.parametrize("workers", [2, 8])
def test_workers_same_generators(F4, workers):
    S = Structure(4, (RelSpec.of_form("nabla", F4),))
    a = automorphisms(S)
    b = automorphisms(S, workers=workers)
    assert a.order == b.order
    assert [g.key() for g in a.group.gens] == [g.key() for g in b.group.gens]


def test_node_budget(F4):
    with pytest.raises(BudgetExhausted):
        automorphisms(Structure(4, (RelSpec.of_form("nabla", F4),)), node_limit=10)


def test_structure_dims_checked(F4):
    with pytest.raises(DimensionMismatch):
        Structure(3, (RelSpec.of_form("p0", F4),))


def test_pointwise_stabilizer_examples():
    G = agl_gens(4)
    assert same_group(pointwise_stabilizer(G, ()), G)
    H = pointwise_stabilizer(G, (0, 1, 2))
    assert fixed_points(H) == {0, 1, 2, 3}
    orbit = tuple_orbits(G, 3, "injective").classes
    size = next(c.orbit_size for c in orbit if c.rep == (0, 1, 2))
    assert group_order(H) * size == group_order(G)


def test_pointwise_stabilizer_members_fix_points():
    G = gl_gens(3)
    H = pointwise_stabilizer(G, (1, 2))
    assert all(g(1) == 1 and g(2) == 2 for g in H.gens)
    assert all(member(G, g) for g in H.gens)


def test_fixed_points_examples():
    assert fixed_points(gl_gens(3)) == {0}
    assert fixed_points(sym_gens(3)) == set()


def test_parse_structure(tmp_path):
    (tmp_path / "edge.rel").write_text("arity 2\n0x1 0x2\n0x2 0x1\n")
    S = parse_structure("dim 4\nform standard\nrelation p0\nrelation file:edge.rel\nfix-zero\n",
                        base_dir=tmp_path)
    assert S.dim == 4 and S.fix_zero and [R.name for R in S.relations] == ["p0", "edge"]
    with pytest.raises(ValueError):
        parse_structure("relation p0\n")
