"""Permutations of F_2^n and groups given by generators.

Permutations act on the right: ``x^(pq) = (x^p)^q``. A permutation is an
image table over the 2^n points; composition is one numpy gather.
Exact orders and membership come from a deterministic Schreier-Sims
stabilizer chain; ``enumerate_elements`` is an independent BFS oracle.
"""

from __future__ import annotations

import threading
from collections import deque
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExhausted, DimensionMismatch
from .gf2 import MAX_DIM, check_dim

DEFAULT_SIFT_LIMIT = 5_000_000
DEFAULT_BFS_LIMIT = 1_000_000


class Perm:
    """A bijection of {0, ..., 2^dim - 1}, stored as an image table."""

    __slots__ = ("dim", "images", "_key")

    def __init__(self, dim, images, check=True):
        check_dim(dim, lo=0)
        arr = np.array(images, dtype=np.int32)
        if check:
            n = 1 << dim
            if arr.shape != (n,):
                raise ValueError(f"need {n} images, got shape {arr.shape}")
            seen = np.zeros(n, dtype=bool)
            if arr.min() < 0 or arr.max() >= n:
                raise ValueError("image out of range")
            seen[arr] = True
            if not seen.all():
                raise ValueError("images do not form a bijection")
        arr.setflags(write=False)
        self.dim = dim
        self.images = arr
        self._key = None

    @classmethod
    def identity(cls, dim):
        return cls(dim, np.arange(1 << dim, dtype=np.int32), check=False)

    @property
    def degree(self):
        return 1 << self.dim

    def __call__(self, x):
        return int(self.images[x])

    def key(self):
        if self._key is None:
            self._key = self.images.tobytes()
        return self._key

    def __eq__(self, other):
        return isinstance(other, Perm) and self.dim == other.dim and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __mul__(self, other):
        return compose(self, other)

    def __invert__(self):
        return inverse(self)

    def is_identity(self):
        return bool((self.images == np.arange(self.degree)).all())

    def support(self):
        return np.flatnonzero(self.images != np.arange(self.degree))

    def apply_tuple(self, t):
        return tuple(int(self.images[x]) for x in t)

    def __repr__(self):
        moved = self.support()
        if moved.size == 0:
            return f"Perm(dim={self.dim}, identity)"
        return f"Perm(dim={self.dim}, moves {moved.size} points)"


def compose(p: Perm, q: Perm) -> Perm:
    """p then q."""
    if p.dim != q.dim:
        raise DimensionMismatch(f"cannot compose perms of dims {p.dim} and {q.dim}")
    return Perm(p.dim, q.images[p.images], check=False)


def inverse(p: Perm) -> Perm:
    inv = np.empty_like(p.images)
    inv[p.images] = np.arange(p.degree, dtype=np.int32)
    return Perm(p.dim, inv, check=False)


def word(gens: Sequence[Perm], letters: Iterable[int], dim: int) -> Perm:
    w = Perm.identity(dim)
    for i in letters:
        w = compose(w, gens[i])
    return w


def linear_perm(dim: int, cols: Sequence[int]) -> Perm:
    """The permutation induced by the linear map e_j -> cols[j]."""
    img = np.zeros(1 << dim, dtype=np.int64)
    for j, c in enumerate(cols):
        h = 1 << j
        img[h:2 * h] = img[:h] ^ c
    return Perm(dim, img)


def transposition(dim: int, a: int, b: int) -> Perm:
    img = np.arange(1 << dim, dtype=np.int32)
    img[a], img[b] = b, a
    return Perm(dim, img, check=False)


# -- stabilizer chain ----------------------------------------------------------

def _orbits_under(arrays, n):
    """Orbit label (smallest member) of every point under a list of image arrays."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in arrays:
        moved = np.flatnonzero(g != np.arange(n))
        for x in moved.tolist():
            a, b = find(x), find(int(g[x]))
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(x) for x in range(n)]


def _choose_base_point(arrays, n, exclude=()):
    """Point of largest orbit under ``arrays`` among moved points; ties to smallest."""
    labels = _orbits_under(arrays, n)
    sizes: dict[int, int] = {}
    for lab in labels:
        sizes[lab] = sizes.get(lab, 0) + 1
    moved = np.zeros(n, dtype=bool)
    for g in arrays:
        moved |= g != np.arange(n)
    best = None
    for x in np.flatnonzero(moved).tolist():
        if x in exclude:
            continue
        s = sizes[labels[x]]
        if best is None or s > best[0]:
            best = (s, x)
    return None if best is None else best[1]


class _Level:
    __slots__ = ("point", "gens", "reps", "inv_reps", "order", "tested")

    def __init__(self, point, ident):
        self.point = point
        self.gens: list[np.ndarray] = []
        self.reps = {point: ident}
        self.inv_reps = {point: ident}
        self.order = [point]
        self.tested: set[tuple[int, int]] = set()

    def extend_orbit(self):
        q = deque(self.order)
        while q:
            x = q.popleft()
            rx = self.reps[x]
            for s in self.gens:
                y = int(s[x])
                if y not in self.reps:
                    r = s[rx]
                    inv = np.empty_like(r)
                    inv[r] = np.arange(r.size, dtype=r.dtype)
                    self.reps[y] = r
                    self.inv_reps[y] = inv
                    self.order.append(y)
                    q.append(y)


class StabChain:
    """Base and strong generating set built by deterministic Schreier-Sims."""

    def __init__(self, degree: int, gens: Sequence[np.ndarray], base_prefix: Sequence[int] = (),
                 sift_limit: int = DEFAULT_SIFT_LIMIT):
        self.n = degree
        self.ident = np.arange(degree, dtype=np.int32)
        self.sift_limit = sift_limit
        self.sifts = 0
        self.levels: list[_Level] = []
        for b in base_prefix:
            if all(lv.point != b for lv in self.levels):
                self.levels.append(_Level(int(b), self.ident))
        gens = [np.asarray(g, dtype=np.int32) for g in gens]
        gens = [g for g in gens if not np.array_equal(g, self.ident)]
        self._build(gens)

    # sifting ---------------------------------------------------------------

    def sift(self, h, start=0):
        """Strip h through levels >= start; returns (residue, level reached)."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            x = int(h[lv.point])
            inv = lv.inv_reps.get(x)
            if inv is None:
                return h, i
            h = inv[h]
        return h, len(self.levels)

    def _fixes_base(self, g, upto):
        return all(int(g[self.levels[i].point]) == self.levels[i].point for i in range(upto))

    def _new_level_for(self, arrays):
        taken = {lv.point for lv in self.levels}
        b = _choose_base_point(arrays, self.n, exclude=taken)
        self.levels.append(_Level(b, self.ident))

    def _build(self, gens):
        if not gens:
            return
        while True:
            loose = [g for g in gens if self._fixes_base(g, len(self.levels))]
            if not loose:
                break
            self._new_level_for(loose)
        for i, lv in enumerate(self.levels):
            lv.gens = [g for g in gens if self._fixes_base(g, i)]
            lv.extend_orbit()
        i = len(self.levels) - 1
        while i >= 0:
            jumped = self._process_level(i)
            i = jumped if jumped is not None else i - 1

    def _process_level(self, i):
        lv = self.levels[i]
        k = 0
        while k < len(lv.order):
            x = lv.order[k]
            k += 1
            rx = lv.reps[x]
            for si in range(len(lv.gens)):
                if (x, si) in lv.tested:
                    continue
                lv.tested.add((x, si))
                s = lv.gens[si]
                y = int(s[x])
                h = lv.inv_reps[y][s[rx]]
                self.sifts += 1
                if self.sifts > self.sift_limit:
                    raise BudgetExhausted("Schreier generators sifted", self.sift_limit)
                res, j = self.sift(h, i + 1)
                if np.array_equal(res, self.ident):
                    continue
                if j == len(self.levels):
                    self._new_level_for([res])
                for l in range(i + 1, j + 1):
                    self.levels[l].gens.append(res)
                    self.levels[l].extend_orbit()
                return j
        return None

    # queries ---------------------------------------------------------------

    @property
    def base(self):
        return [lv.point for lv in self.levels]

    def orbit_sizes(self):
        return [len(lv.order) for lv in self.levels]

    def order(self):
        return prod(self.orbit_sizes())

    def contains(self, g):
        res, j = self.sift(np.asarray(g, dtype=np.int32))
        return j == len(self.levels) and np.array_equal(res, self.ident)

    def stabilizer_generators(self, depth):
        """Strong generators of the pointwise stabilizer of base[:depth]."""
        if depth >= len(self.levels):
            return []
        return list(self.levels[depth].gens)

    def strong_generators(self):
        seen = set()
        out = []
        for lv in self.levels:
            for g in lv.gens:
                kb = g.tobytes()
                if kb not in seen:
                    seen.add(kb)
                    out.append(g)
        return out


# -- generated groups ----------------------------------------------------------

class GenSet:
    """A permutation group presented by a nonempty list of generators."""

    def __init__(self, gens: Sequence[Perm], dim: int | None = None, name: str | None = None):
        gens = tuple(gens)
        if not gens:
            if dim is None:
                raise ValueError("empty generator list needs an explicit dim")
            gens = (Perm.identity(dim),)
        d = gens[0].dim
        for g in gens:
            if g.dim != d:
                raise DimensionMismatch("generators of different dimensions")
        if dim is not None and dim != d:
            raise DimensionMismatch(f"generators have dim {d}, expected {dim}")
        self.dim = d
        self.gens = gens
        self.name = name
        self._chain = None
        self._lock = threading.Lock()

    @property
    def degree(self):
        return 1 << self.dim

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def gen_table(self) -> np.ndarray:
        return np.stack([g.images for g in self.gens]).astype(np.int32)

    def chain(self, sift_limit=DEFAULT_SIFT_LIMIT) -> StabChain:
        with self._lock:
            if self._chain is None:
                self._chain = StabChain(self.degree, [g.images for g in self.gens],
                                        sift_limit=sift_limit)
            return self._chain

    def order(self):
        return self.chain().order()

    def __contains__(self, p):
        return member(self, p)

    def extended(self, extra: Iterable[Perm], name=None):
        return GenSet(self.gens + tuple(extra), name=name)

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"GenSet{label}(dim={self.dim}, {len(self.gens)} gens)"


def group_order(G: GenSet, sift_limit: int = DEFAULT_SIFT_LIMIT) -> int:
    return G.chain(sift_limit).order()


def member(G: GenSet, p: Perm) -> bool:
    if p.dim != G.dim:
        raise DimensionMismatch(f"perm dim {p.dim} vs group dim {G.dim}")
    return G.chain().contains(p.images)


def is_subgroup(H: GenSet, G: GenSet) -> bool:
    """Every generator of H sifts into G."""
    return all(member(G, h) for h in H.gens)


def same_group(G: GenSet, H: GenSet) -> bool:
    return is_subgroup(G, H) and is_subgroup(H, G)


def enumerate_elements(G: GenSet, limit: int = DEFAULT_BFS_LIMIT) -> set[bytes]:
    """All group elements as image-table bytes, by BFS over generator words."""
    start = np.arange(G.degree, dtype=np.int32)
    seen = {start.tobytes()}
    frontier = [start]
    gens = [g.images for g in G.gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                kb = y.tobytes()
                if kb not in seen:
                    seen.add(kb)
                    if len(seen) > limit:
                        raise BudgetExhausted("BFS group elements", limit)
                    nxt.append(y)
        frontier = nxt
    return seen


def bfs_order(G: GenSet, limit: int = DEFAULT_BFS_LIMIT) -> int:
    return len(enumerate_elements(G, limit))


def fixed_points(G: GenSet) -> list[int]:
    mask = np.ones(G.degree, dtype=bool)
    ident = np.arange(G.degree)
    for g in G.gens:
        mask &= g.images == ident
    return np.flatnonzero(mask).tolist()


# -- file format ---------------------------------------------------------------

def format_perm(p: Perm) -> str:
    return f"dim {p.dim}\n" + " ".join(str(int(x)) for x in p.images) + "\n"


def format_genset(G: GenSet) -> str:
    return "\n".join(format_perm(g) for g in G.gens)


def parse_genset(text: str) -> GenSet:
    blocks, cur = [], []
    for line in text.splitlines():
        if line.strip().startswith("#"):
            continue
        if not line.strip():
            if cur:
                blocks.append(cur)
                cur = []
            continue
        cur.append(line)
    if cur:
        blocks.append(cur)
    perms = []
    for b in blocks:
        head = b[0].split()
        if len(head) != 2 or head[0] != "dim":
            raise ValueError("permutation block must start with 'dim n'")
        n = int(head[1])
        if not 0 <= n <= MAX_DIM:
            raise ValueError(f"dimension {n} out of range")
        images = [int(t) for line in b[1:] for t in line.split()]
        perms.append(Perm(n, images))
    if not perms:
        raise ValueError("no permutations found")
    return GenSet(perms)


def parse_perm(text: str) -> Perm:
    G = parse_genset(text)
    if len(G.gens) != 1:
        raise ValueError("expected exactly one permutation")
    return G.gens[0]
