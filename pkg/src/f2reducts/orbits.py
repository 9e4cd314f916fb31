"""Orbits of a generated group on k-tuples of points.

A k-tuple (t_0, ..., t_{k-1}) is encoded as the integer sum t_i N^(k-1-i),
so integer order on codes is lexicographic order on tuples and the least
code of a class is its canonical representative.

When a filter is not invariant under the group (for instance
``independent`` under AGL), a class is the intersection of one orbit with
the filtered set; ``size`` counts the filtered members and ``orbit_size``
the whole orbit.
"""

from __future__ import annotations

import io
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import BudgetExhausted, HypothesisFailed
from .forms import BilinForm
from .gf2 import format_tuple, independent_bits, parse_point, rank_bits, reduce_bits, echelon_bits
from .perm import GenSet, Perm

FILTERS = ("all", "injective", "nonzero-injective", "independent")
DEFAULT_STATE_BUDGET = 10 ** 7
MAX_ARITY = 6
WORD_CAP = 10 ** 6


@dataclass(frozen=True)
class OrbitClass:
    rep: tuple[int, ...]
    size: int
    orbit_size: int
    descriptor: dict = field(default_factory=dict, compare=False, hash=False)


@dataclass
class OrbitCensus:
    dim: int
    arity: int
    filter: str
    classes: list[OrbitClass]
    group: str | None = None

    @property
    def count(self):
        return len(self.classes)

    @property
    def total(self):
        return sum(c.size for c in self.classes)

    def partition_key(self):
        return tuple((c.rep, c.size, c.orbit_size) for c in self.classes)


# -- tuple codes ---------------------------------------------------------------

def encode(t, N):
    c = 0
    for x in t:
        c = c * N + int(x)
    return c


def decode(c, N, k):
    out = []
    for _ in range(k):
        out.append(c % N)
        c //= N
    return tuple(reversed(out))


def _digits(N, k):
    codes = np.arange(N ** k, dtype=np.int64)
    return [(codes // N ** (k - 1 - i)) % N for i in range(k)]


def filter_mask(N, k, filter="all"):
    """Boolean mask over all N^k codes selecting the filtered tuples."""
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; expected one of {', '.join(FILTERS)}")
    M = N ** k
    if filter == "all":
        return np.ones(M, dtype=bool)
    d = _digits(N, k)
    mask = np.ones(M, dtype=bool)
    if filter in ("injective", "nonzero-injective"):
        for i in range(k):
            for j in range(i + 1, k):
                mask &= d[i] != d[j]
        if filter == "nonzero-injective":
            for i in range(k):
                mask &= d[i] != 0
        return mask
    n = N.bit_length() - 1
    if k > n:
        raise ValueError(f"independent filter needs k <= dim ({k} > {n})")
    # independent iff no nonempty subset sums to zero
    for s in range(1, 1 << k):
        acc = np.zeros(M, dtype=np.int64)
        for i in range(k):
            if s >> i & 1:
                acc ^= d[i]
        mask &= acc != 0
    return mask


# -- descriptors ---------------------------------------------------------------

def equality_pattern(t):
    """Letters by first occurrence, e.g. (5, 5, 2, 7) -> 'aabc'."""
    seen = {}
    return "".join(seen.setdefault(x, "abcdefgh"[len(seen)]) for x in t)


def sum_zero(t):
    s = 0
    for x in t:
        s ^= x
    return s == 0


def gram_bits(F: BilinForm, t):
    return "".join(str(F.dot_bits(t[i], t[j])) for i in range(len(t)) for j in range(i + 1, len(t)))


_THREE_ONE = {"aaab", "aaba", "abaa", "abbb"}
_PAIR_TWO = {"aabc", "abac", "abca", "abbc", "abcb", "abcc"}


def affine_family(t):
    """Family 1..8 of a 4-tuple in the listing of AGL orbits on 4-tuples.

    Family 2 collects the 4 position patterns of one value repeated three
    times; family 6 the 6 position patterns of one repeated pair.
    """
    if len(t) != 4:
        raise ValueError("families are defined for 4-tuples")
    p = equality_pattern(t)
    if p == "aaaa":
        return 1
    if p in _THREE_ONE:
        return 2
    if p == "aabb":
        return 3
    if p == "abab":
        return 4
    if p == "abba":
        return 5
    if p in _PAIR_TWO:
        return 6
    return 8 if sum_zero(t) else 7


def describe(t, F: BilinForm | None = None):
    d = {"pattern": equality_pattern(t), "sum_zero": int(sum_zero(t)), "rank": rank_bits(t)}
    if F is not None:
        d["gram"] = gram_bits(F, t)
    if len(t) == 4:
        d["family"] = affine_family(t)
    return d


# -- censuses ------------------------------------------------------------------

def _check_census_args(G: GenSet, k, budget):
    if not 1 <= k <= MAX_ARITY:
        raise ValueError(f"arity must be in [1, {MAX_ARITY}], got {k}")
    N = G.degree
    if N ** k > budget:
        raise BudgetExhausted(f"orbit census on {N}^{k} tuples", budget)
    return N


def tuple_orbits(G: GenSet, k: int, filter: str = "all", budget: int = DEFAULT_STATE_BUDGET,
                 workers: int = 1, form: BilinForm | None = None) -> OrbitCensus:
    """Exact partition of the filtered k-tuples into G-orbits."""
    N = _check_census_args(G, k, budget)
    mask = filter_mask(N, k, filter)
    labels, full = kernels.orbit_labels(G.gen_table(), k, mask, workers=workers)
    hit = np.flatnonzero(labels >= 0)
    sizes = np.bincount(labels[hit], minlength=full.size)
    _, first = np.unique(labels[hit], return_index=True)
    classes = []
    for i, code in enumerate(hit[first]):
        rep = decode(int(code), N, k)
        classes.append(OrbitClass(rep, int(sizes[i]), int(full[i]), describe(rep, form)))
    return OrbitCensus(N.bit_length() - 1, k, filter, classes, G.name)


def orbit_profile(G: GenSet, kmax: int, filter: str = "all", budget: int = DEFAULT_STATE_BUDGET,
                  workers: int = 1) -> tuple[int, ...]:
    return tuple(tuple_orbits(G, k, filter, budget, workers).count for k in range(1, kmax + 1))


# -- witnesses -----------------------------------------------------------------

def _orbit_search(G: GenSet, s, goal, budget):
    """BFS over the orbit of tuple s; returns a verified witness for the first goal hit."""
    N = G.degree
    k = len(s)
    gens = G.gen_table()
    start = encode(s, N)
    parent = {start: None}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        t = decode(c, N, k)
        if goal(t):
            return _witness(G, parent, c, s, t)
        for gi in range(gens.shape[0]):
            img = encode(gens[gi][list(t)], N)
            if img not in parent:
                parent[img] = (c, gi)
                if len(parent) > budget:
                    raise BudgetExhausted("orbit search", budget)
                queue.append(img)
    return None


def _witness(G, parent, c, s, t):
    letters = []
    while parent[c] is not None:
        c, gi = parent[c]
        letters.append(gi)
        if len(letters) > WORD_CAP:
            raise BudgetExhausted("witness word length", WORD_CAP)
    letters.reverse()
    g = Perm.identity(G.dim)
    for gi in letters:
        g = g * G.gens[gi]
    if g.apply_tuple(s) != tuple(t):
        from .errors import InvariantViolation

        raise InvariantViolation("orbit witness does not map s to t")
    return g


def same_orbit(G: GenSet, s, t, budget: int = DEFAULT_STATE_BUDGET) -> Perm | None:
    """A group element mapping tuple s to tuple t, or None if none exists."""
    s = tuple(int(x) for x in s)
    t = tuple(int(x) for x in t)
    if len(s) != len(t):
        raise ValueError("tuples of different arity")
    N = G.degree
    if any(not 0 <= x < N for x in s + t):
        raise ValueError("point out of range for this group")
    return _orbit_search(G, s, lambda u: u == t, budget)


def independentize(G: GenSet, t, budget: int = DEFAULT_STATE_BUDGET) -> Perm | None:
    """h in G with t^h linearly independent, or None after exhausting the orbit.

    Requires distinct nonzero points with the last outside the span of the
    others.
    """
    t = tuple(int(x) for x in t)
    if not t:
        raise HypothesisFailed("empty tuple")
    if 0 in t or len(set(t)) != len(t):
        raise HypothesisFailed("points must be distinct and nonzero")
    if reduce_bits(t[-1], echelon_bits(t[:-1])) == 0:
        raise HypothesisFailed("last point lies in the span of the others")
    if independent_bits(t):
        return Perm.identity(G.dim)
    return _orbit_search(G, t, independent_bits, budget)


# -- TSV -----------------------------------------------------------------------

TSV_COLUMNS = ("class_id", "representative", "size", "orbit_size", "pattern", "sum_zero",
               "rank", "gram", "family")


def census_tsv(C: OrbitCensus, config: str | None = None) -> str:
    out = io.StringIO()
    head = config or f"dim={C.dim} arity={C.arity} filter={C.filter} group={C.group}"
    out.write(f"# {head}\n")
    out.write("\t".join(TSV_COLUMNS) + "\n")
    for i, c in enumerate(C.classes):
        d = c.descriptor
        row = [str(i), format_tuple(c.rep), str(c.size), str(c.orbit_size), d.get("pattern", ""),
               str(d.get("sum_zero", "")), str(d.get("rank", "")), d.get("gram", ""),
               str(d.get("family", ""))]
        out.write("\t".join(row) + "\n")
    return out.getvalue()


def parse_census_tsv(text: str) -> OrbitCensus:
    meta = {}
    classes = []
    for ln in text.splitlines():
        if ln.startswith("#"):
            for tok in ln[1:].split():
                if "=" in tok:
                    key, val = tok.split("=", 1)
                    meta[key] = val
            continue
        if not ln.strip() or ln.startswith("class_id"):
            continue
        cols = ln.split("\t")
        rep = tuple(parse_point(x) for x in cols[1].split(","))
        desc = {"pattern": cols[4], "sum_zero": int(cols[5]), "rank": int(cols[6])}
        if cols[7]:
            desc["gram"] = cols[7]
        if cols[8]:
            desc["family"] = int(cols[8])
        classes.append(OrbitClass(rep, int(cols[2]), int(cols[3]), desc))
    group = meta.get("group")
    return OrbitCensus(int(meta["dim"]), int(meta["arity"]), meta["filter"], classes,
                       None if group in (None, "None") else group)
