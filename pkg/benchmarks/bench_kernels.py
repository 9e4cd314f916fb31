"""Compare the compiled kernels with the pure fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends are run on the same inputs and their outputs are checked for
equality before timings are reported.
"""

import argparse
import time

import numpy as np

from f2reducts import _fallback, kernels
from f2reducts.autsearch import Structure, _Search
from f2reducts.forms import standard_form
from f2reducts.orbits import filter_mask
from f2reducts.relations import RelSpec
from f2reducts.stdgroups import agl_gens, delta_gens, sym_gens

try:
    from f2reducts import _core
except ImportError:
    _core = None


def orbit_cases():
    F = standard_form(2)
    yield "agl(4) k=4 all", agl_gens(4), 4, "all"
    yield "delta(4) k=4 injective", delta_gens(F), 4, "injective"
    yield "sym(3) k=6 all", sym_gens(3), 6, "all"
    yield "agl(5) k=4 all", agl_gens(5), 4, "all"


def search_cases():
    F4, F6 = standard_form(2), standard_form(3)
    yield "nabla dim 4", Structure(4, (RelSpec.of_form("nabla", F4),))
    yield "diamond+0 dim 4", Structure(4, (RelSpec.of_form("diamond", F4),), True)
    yield "p0 dim 6", Structure(6, (RelSpec.of_form("p0", F6),))


def best_of(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def all_searches(srch, impl):
    """Every level-0 candidate search, as the automorphism builder would issue them."""
    res = []
    N = srch.N
    full = (1 << N) - 1
    for y in range(N):
        forced = np.array([1 << y] + [full] * (N - 1), dtype=np.uint64)
        res.append(kernels.find_extension(srch.C, srch.row, srch.col, srch.dom, forced,
                                          srch.arity, srch.offset, srch.tables, 10 ** 7, impl=impl))
    return res


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _core is None:
        print("compiled core not built; nothing to compare")
        return
    print(f"{'kernel':<10}{'case':<28}{'cython s':>10}{'python s':>10}{'speedup':>9}")
    for name, G, k, filt in orbit_cases():
        gens = G.gen_table()
        mask = filter_mask(G.degree, k, filt).astype(np.uint8)
        a, ta = best_of(lambda: _core.orbit_labels(gens, k, mask), args.repeat)
        b, tb = best_of(lambda: _fallback.orbit_labels(gens, k, mask), args.repeat)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
        print(f"{'orbits':<10}{name:<28}{ta:>10.4f}{tb:>10.4f}{tb / ta:>8.1f}x")
    for name, S in search_cases():
        srch = _Search(S)
        a, ta = best_of(lambda: all_searches(srch, _core), args.repeat)
        b, tb = best_of(lambda: all_searches(srch, _fallback), args.repeat)
        for (ia, na, _), (ib, nb, _) in zip(a, b):
            assert na == nb and (ia is None) == (ib is None)
        print(f"{'search':<10}{name:<28}{ta:>10.4f}{tb:>10.4f}{tb / ta:>8.1f}x")


if __name__ == "__main__":
    main()
