"""Acceptance criteria 1-14, each at its stated tolerance.

Every test prints one line ``ACCEPTANCE <n> PASS|FAIL: <detail>``.
"""

import itertools
import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

from f2reducts import kernels
from f2reducts.autsearch import Structure, automorphisms, fixed_points, pointwise_stabilizer
from f2reducts.classify import classify
from f2reducts.cli import main as cli_main
from f2reducts.forms import BilinForm, standard_form
from f2reducts.fraisse import (
    Embedding, amalgamate, check_axioms, extension_witness, joint_embed,
    realize_graph,
)
from f2reducts.gf2 import (
    Vec2, apply_linear_bits, independent_bits, inverse_matrix_bits, span_elements,
)
from f2reducts.orbits import affine_family, filter_mask, tuple_orbits
from f2reducts.perm import enumerate_elements, group_order, member, same_group
from f2reducts.relations import RelSpec, fp_line, relation_table, simH_classes, unit_subgroups
from f2reducts.stdgroups import (
    agl_gens, delta_gens, named_group, named_order, sp_gens, translation,
)


@pytest.fixture
def report(capsys):
    @contextmanager
    def _report(n):
        notes = []
        ok = False
        try:
            yield notes
            ok = True
        finally:
            with capsys.disabled():
                status = "PASS" if ok else "FAIL"
                print(f"\nACCEPTANCE {n} {status}: {'; '.join(notes)}")
    return _report


def test_01_group_orders(report):
    with report(1) as notes:
        F = standard_form(2)
        for name, n, want in [("gl", 3, 168), ("agl", 3, 1344), ("sp", 4, 720),
                              ("delta", 4, 11520), ("sym0", 3, 5040)]:
            t0 = time.perf_counter()
            G = named_group(name, n, F if name in ("sp", "delta") else None)
            chain = group_order(G)
            elems = enumerate_elements(G)
            # every enumerated element sifts through the chain
            assert all(G.chain().contains(np.frombuffer(b, dtype=np.int32)) for b in elems)
            dt = time.perf_counter() - t0
            assert chain == len(elems) == want == named_order(name, n)
            assert str(chain).encode() == str(len(elems)).encode()
            assert dt < 5.0
            notes.append(f"{name}({n})={chain} in {dt:.2f}s")


def test_02_affine_four_tuples(report):
    with report(2) as notes:
        for n in (3, 4):
            t0 = time.perf_counter()
            G = agl_gens(n)
            inj = tuple_orbits(G, 4, "injective")
            assert inj.count == 2
            assert sorted(c.descriptor["sum_zero"] for c in inj.classes) == [0, 1]
            full = tuple_orbits(G, 4)
            keys = {(c.descriptor["pattern"], c.descriptor["sum_zero"]) for c in full.classes}
            assert full.count == len(keys) == 16
            fams = [affine_family(c.rep) for c in full.classes]
            per_family = [fams.count(f) for f in range(1, 9)]
            assert per_family == [1, 4, 1, 1, 1, 6, 1, 1]
            dt = time.perf_counter() - t0
            assert dt < 30.0
            notes.append(f"n={n}: 2 injective orbits, 16 orbits in 8 families {per_family} "
                         f"({dt:.2f}s)")


def test_03_affine_stabilizer_fixed_sets(report):
    with report(3) as notes:
        t0 = time.perf_counter()
        G = agl_gens(4)
        count = 0
        for a, b, c in itertools.permutations(range(16), 3):
            if not independent_bits([a, b, c]):
                continue
            count += 1
            assert fixed_points(pointwise_stabilizer(G, (a, b, c))) == {a, b, c, a ^ b ^ c}
        dt = time.perf_counter() - t0
        assert count == 2520 and dt < 60.0
        notes.append(f"{count} independent triples, fixed set always {{a,b,c,a+b+c}} ({dt:.1f}s)")


def test_04_aut_p0(report):
    with report(4) as notes:
        F = standard_form(2)
        r = automorphisms(Structure(4, (RelSpec.of_form("p0", F),)))
        assert r.order == 720 and same_group(r.group, sp_gens(F))
        notes.append("dim 4: order 720, equal to <transvections> by mutual sifting")
        F6 = standard_form(3)
        r6 = automorphisms(Structure(6, (RelSpec.of_form("p0", F6),)))
        assert r6.order == 1451520 == group_order(r6.group) == named_order("sp", 6)
        notes.append("dim 6: order 1451520 (chain)")


def test_05_aut_nabla(report):
    with report(5) as notes:
        F = standard_form(2)
        r = automorphisms(Structure(4, (RelSpec.of_form("nabla", F),)))
        assert r.order == 11520 == 16 * 720
        assert all(member(r.group, translation(Vec2(4, a))) for a in range(16))
        notes.append("order 11520, all 16 translations are members")


def test_06_diamond_zero_fixing(report):
    with report(6) as notes:
        F = standard_form(2)
        r = automorphisms(Structure(4, (RelSpec.of_form("diamond", F),), fix_zero=True))
        assert r.order == 720 and same_group(r.group, sp_gens(F))
        notes.append("0-fixing diamond preservers: order 720, equal to Sp(4,2)")


def test_07_pentagon_vs_diamonds(report):
    with report(7) as notes:
        t0 = time.perf_counter()
        F = standard_form(2)
        P = relation_table(RelSpec.of_form("pentagon", F))
        D = relation_table(RelSpec.of_form("diamond", F))
        tup = np.array(list(itertools.permutations(range(1, 16), 5)), dtype=np.int64)
        a, b, c, d, e = tup.T
        odd = (D[a, b, c, d].astype(int) + D[a, b, c, e] + D[a, b, d, e] + D[a, c, d, e]
               + D[b, c, d, e]) % 2 == 1
        pent = P[a, b, c, d, e]
        bad = np.flatnonzero(pent != odd)
        dt = time.perf_counter() - t0
        notes.append(f"{len(tup)} tuples, {int(pent.sum())} pentagons, "
                     f"{len(bad)} counterexamples ({dt:.2f}s)")
        assert len(tup) == 15 * 14 * 13 * 12 * 11
        assert len(bad) == 0 and dt < 10.0


def test_08_delta_two_orbits(report):
    with report(8) as notes:
        G = delta_gens(standard_form(2))
        C = tuple_orbits(G, 3, "injective")
        assert C.count == 2
        labels, _ = kernels.orbit_labels(G.gen_table(), 3, filter_mask(16, 3, "injective"))
        indep = filter_mask(16, 3, "independent")
        assert set(labels[indep].tolist()) == {0, 1}
        notes.append(f"2 orbits of sizes {[c.size for c in C.classes]}, both meet independent triples")


def test_09_extension_property(report):
    with report(9) as notes:
        F = standard_form(3)
        checked = 0
        for k in range(3):
            for a in itertools.permutations(range(1, 64), k):
                if not independent_bits(a):
                    continue
                span = set(span_elements(a))
                for t in itertools.product((0, 1), repeat=k):
                    w = extension_witness(F, [Vec2(6, x) for x in a], t)
                    assert w is not None and w.bits not in span
                    assert all(F.dot_bits(x, w.bits) == ti for x, ti in zip(a, t))
                    checked += 1
        e = [Vec2.unit(4, i) for i in (1, 2, 3)]
        assert extension_witness(standard_form(2), e, [0, 0, 0]) is None
        notes.append(f"dim 6: {checked} (tuple, targets) instances succeed; dim 4 case is none")


def _canon(adj, k):
    return min(tuple(adj[p[i]][p[j]] for i in range(k) for j in range(i + 1, k))
               for p in itertools.permutations(range(k)))


def test_10_graph_universality(report):
    with report(10) as notes:
        k = 4
        pairs = list(itertools.combinations(range(k), 2))
        reps = {}
        for mask in range(1 << len(pairs)):
            adj = [[0] * k for _ in range(k)]
            for i, (u, v) in enumerate(pairs):
                if mask >> i & 1:
                    adj[u][v] = adj[v][u] = 1
            reps.setdefault(_canon(adj, k), adj)
        assert len(reps) == 11
        F = standard_form(5)
        for adj in reps.values():
            b = realize_graph(adj, F)
            assert b is not None and independent_bits([v.bits for v in b])
            assert all(F.dot_bits(b[i].bits, b[j].bits) == adj[i][j]
                       for i in range(k) for j in range(k) if i != j)
        notes.append("all 11 unlabeled 4-vertex graphs realized in dim 10")


def test_11_classifier_round_trip(report):
    with report(11) as notes:
        F = standard_form(2)
        labels = {"sp": "Sp", "delta": "Delta", "gl": "GL", "agl": "AGL", "sym0": "Sym0",
                  "sym": "Sym"}
        for name, label in labels.items():
            assert classify(named_group(name, 4, F), F).label == label
        for a in range(1, 16):
            G = sp_gens(F).extended([translation(Vec2(4, a))])
            assert classify(G, F).label == "Delta"
        notes.append("six named groups classify to themselves; <Sp, t_a> is Delta for all 15 a")


def _divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def test_12_sim_h(report):
    with report(12) as notes:
        for p in (3, 5):
            subs = unit_subgroups(p)
            assert len(subs) == len(_divisors(p - 1))
            counts = []
            for H in subs:
                classes = simH_classes(p, H, 2)
                assert len(classes) == (p ** 2 - 1) // len(H)
                assert all(set(c) <= fp_line(p, c[0]) for c in classes)
                counts.append(len(classes))
            notes.append(f"p={p}: {len(subs)} relations, class counts {counts}")


def _random_form(rng, dim):
    m = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            m[i][j] = m[j][i] = rng.randint(0, 1)
    return BilinForm.from_matrix(m) if dim else BilinForm.zero(0)


def _random_independent(rng, dim, k):
    while True:
        vs = [rng.randrange(1, 1 << dim) for _ in range(k)] if dim else []
        if independent_bits(vs):
            return vs


def _restrict(F, vs):
    return BilinForm.from_matrix([[F.dot_bits(x, y) for y in vs] for x in vs]) if vs else BilinForm.zero(0)


def _rebase(F, rng):
    """F in a random basis, plus the coordinate change old -> new."""
    n = F.dim
    cols = _random_independent(rng, n, n)
    G = _restrict(F, cols)
    inv = inverse_matrix_bits(cols, n) if n else ()
    return G, (lambda x: apply_linear_bits(inv, x))


def test_13_fraisse_properties(report):
    with report(13) as notes:
        rng = random.Random(2024)
        for _ in range(200):
            # HP: a subspace with the restricted form embeds by inclusion
            d1 = rng.randint(1, 6)
            S1 = _random_form(rng, d1)
            k = rng.randint(0, d1)
            sub = _random_independent(rng, d1, k)
            S3 = _restrict(S1, sub)
            phi1 = Embedding(S3, S1, tuple(sub))
            assert check_axioms(S3)[0] and phi1.is_valid()
            # JEP
            B = _random_form(rng, rng.randint(0, 6))
            J, ia, ib = joint_embed(S1, B)
            assert check_axioms(J)[0] and ia.is_valid() and ib.is_valid()
            # AP: S2 contains a copy of S3 in a random basis
            extra = _random_form(rng, rng.randint(0, max(0, 6 - k)))
            S2raw, _, _ = joint_embed(S3, extra)
            S2, to_new = _rebase(S2raw, rng)
            phi2 = Embedding(S3, S2, tuple(to_new(1 << j) for j in range(k)))
            assert phi2.is_valid()
            S4, psi1, psi2 = amalgamate(S1, S2, S3, phi1, phi2)
            assert check_axioms(S4)[0] and psi1.is_valid() and psi2.is_valid()
            assert phi1.then(psi1).images == phi2.then(psi2).images
            assert S4.dim == S1.dim + S2.dim - S3.dim
        notes.append("200 random HP/JEP/AP instances: axioms hold, squares commute exactly")


DETERMINISM_RUNS = [
    ["orbits", "--dim", "4", "--group", "agl", "--arity", "4"],
    ["orbits", "--dim", "4", "--group", "delta", "--form", "standard", "--arity", "3",
     "--filter", "injective"],
    ["orbits", "--dim", "4", "--group", "agl", "--arity", "3", "--filter", "independent"],
    ["aut", "--dim", "4", "--form", "standard", "--relations", "nabla"],
    ["aut", "--dim", "4", "--form", "standard", "--relations", "diamond", "--fix-zero"],
    ["aut", "--dim", "6", "--form", "standard", "--relations", "p0"],
    ["classify", "--dim", "4", "--group", "agl", "--form", "standard"],
]


def test_14_determinism(report, tmp_path):
    with report(14) as notes:
        for argv in DETERMINISM_RUNS:
            outs = []
            for w in (1, 2, 8):
                path = tmp_path / f"out{w}.tsv"
                assert cli_main(argv + ["--workers", str(w), "--out", str(path)]) == 0
                outs.append(path.read_bytes())
            assert outs[0] == outs[1] == outs[2]
        notes.append(f"{len(DETERMINISM_RUNS)} censuses/searches byte-identical for workers 1, 2, 8")
