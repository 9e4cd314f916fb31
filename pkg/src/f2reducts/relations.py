"""Finitary relations on F_2^n used to carve out the reducts, and
preservation tests for permutations and generated groups.

Every relation can be tabulated as a boolean array of shape (N,)*arity;
preservation is then a comparison of the table with its image under the
permutation, done exhaustively unless the caller explicitly opts into the
sampled heuristic.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import BudgetExhausted, DependentInput, DimensionMismatch
from .forms import BilinForm, dot_table
from .gf2 import Vec2, check_dim, independent_bits, parse_point
from .perm import GenSet, Perm

DEFAULT_EVAL_BUDGET = 10 ** 8

ARITY = {"parallelogram": 4, "p0": 2, "p1": 2, "diamond": 4, "nabla": 3,
         "pentagon": 5, "simh": 2}
BUILTIN = ("parallelogram", "p0", "p1", "diamond", "nabla", "pentagon", "zeroset")
FORM_RELATIONS = ("p0", "p1", "diamond", "nabla", "pentagon")


@dataclass(frozen=True)
class RelSpec:
    """A named relation on the points of F_2^dim (or F_p^n for simh).

    ``kind`` selects the evaluator; ``form`` is set for product-based
    relations, ``tuples`` for explicit ones, ``field`` = (p, H, n) for simh.
    """

    name: str
    kind: str
    arity: int
    dim: int
    form: BilinForm | None = None
    tuples: frozenset | None = None
    field: tuple | None = None

    def __post_init__(self):
        if self.kind != "explicit" and ARITY.get(self.kind) != self.arity:
            raise ValueError(f"arity {self.arity} does not match relation kind {self.kind!r}")
        if self.kind in FORM_RELATIONS and (self.form is None or self.form.dim != self.dim):
            raise ValueError(f"{self.kind} needs a form of dimension {self.dim}")

    @property
    def npoints(self):
        if self.kind == "simh":
            p, _, n = self.field
            return p ** n
        return 1 << self.dim

    # constructors
    @classmethod
    def parallelogram(cls, dim):
        check_dim(dim)
        return cls("parallelogram", "parallelogram", 4, dim)

    @classmethod
    def zeroset(cls, dim):
        """The unary relation {0}, held as an explicit tuple set."""
        return cls.explicit(dim, 1, [(0,)], name="zeroset")

    @classmethod
    def of_form(cls, kind, F: BilinForm):
        if kind not in FORM_RELATIONS:
            raise ValueError(f"{kind!r} is not a form relation")
        return cls(kind, kind, ARITY[kind], F.dim, form=F)

    @classmethod
    def explicit(cls, dim, arity, tuples, name="explicit"):
        check_dim(dim)
        N = 1 << dim
        tt = frozenset(tuple(int(x) for x in t) for t in tuples)
        for t in tt:
            if len(t) != arity or any(not 0 <= x < N for x in t):
                raise ValueError(f"bad tuple {t} for arity {arity}, dim {dim}")
        return cls(name, "explicit", arity, dim, tuples=tt)

    @classmethod
    def sim_h(cls, p, H, n):
        H = _check_units_subgroup(p, H)
        _check_field_size(p, n)
        return cls(f"sim_H{len(H)}", "simh", 2, 0, field=(p, H, n))

    def evaluate(self, t: Sequence[int]) -> bool:
        if len(t) != self.arity:
            raise ValueError(f"{self.name} has arity {self.arity}")
        if self.kind == "parallelogram":
            return _xor(t) == 0
        if self.kind == "explicit":
            return tuple(t) in self.tuples
        if self.kind == "simh":
            p, H, n = self.field
            return simH(p, H, n, _decode_fp(t[0], p, n), _decode_fp(t[1], p, n))
        F = self.form
        if self.kind == "p0":
            return F.dot_bits(*t) == 0
        if self.kind == "p1":
            return F.dot_bits(*t) == 1
        if self.kind == "diamond":
            return _diamond_bits(F, *t)
        if self.kind == "nabla":
            return _nabla_bits(F, *t)
        if self.kind == "pentagon":
            return _pentagon_bits(F, *t)
        raise AssertionError(self.kind)

    def table(self) -> np.ndarray:
        return relation_table(self)


def builtin_relation(name: str, dim: int, F: BilinForm | None = None) -> RelSpec:
    if name == "parallelogram":
        return RelSpec.parallelogram(dim)
    if name == "zeroset":
        return RelSpec.zeroset(dim)
    if name in FORM_RELATIONS:
        if F is None:
            raise ValueError(f"relation {name!r} needs a form")
        if F.dim != dim:
            raise DimensionMismatch(f"form dim {F.dim} vs dim {dim}")
        return RelSpec.of_form(name, F)
    raise ValueError(f"unknown relation {name!r}; expected one of {', '.join(BUILTIN)}")


def _xor(t):
    s = 0
    for x in t:
        s ^= x
    return s


def _same_dim(*vs):
    d = vs[0].dim
    for v in vs:
        if v.dim != d:
            raise DimensionMismatch("mixed dimensions")
    return d


def _distinct_nonzero(t):
    return len(set(t)) == len(t) and 0 not in t


def _diamond_bits(F, a, b, c, d):
    if not _distinct_nonzero((a, b, c, d)):
        return False
    return (F.dot_bits(a, b) ^ F.dot_bits(b, c) ^ F.dot_bits(c, d) ^ F.dot_bits(d, a)) == 1


def _nabla_bits(F, a, b, c):
    if len({a, b, c}) != 3:
        return False
    return (F.dot_bits(a, b) ^ F.dot_bits(b, c) ^ F.dot_bits(c, a)) == 1


def _pentagon_bits(F, *t):
    if not _distinct_nonzero(t):
        return False
    return sum(F.dot_bits(x, y) for x, y in itertools.combinations(t, 2)) % 2 == 1


def _check_form_args(F, *vs):
    d = _same_dim(*vs)
    if d != F.dim:
        raise DimensionMismatch(f"vectors of dim {d}, form of dim {F.dim}")


def parallelogram(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool:
    _same_dim(a, b, c, d)
    return (a.bits ^ b.bits ^ c.bits ^ d.bits) == 0


def diamond(F: BilinForm, a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool:
    _check_form_args(F, a, b, c, d)
    return _diamond_bits(F, a.bits, b.bits, c.bits, d.bits)


def nabla(F: BilinForm, a: Vec2, b: Vec2, c: Vec2) -> bool:
    _check_form_args(F, a, b, c)
    return _nabla_bits(F, a.bits, b.bits, c.bits)


def pentagon(F: BilinForm, a: Vec2, b: Vec2, c: Vec2, d: Vec2, e: Vec2) -> bool:
    _check_form_args(F, a, b, c, d, e)
    return _pentagon_bits(F, a.bits, b.bits, c.bits, d.bits, e.bits)


def tri_type(F: BilinForm, a: Vec2, b: Vec2, c: Vec2) -> int:
    """How many of a.b, b.c, c.a equal 1, for an independent triple."""
    _check_form_args(F, a, b, c)
    if not independent_bits([a.bits, b.bits, c.bits]):
        raise DependentInput("tri_type needs a linearly independent triple")
    return F.dot_bits(a.bits, b.bits) + F.dot_bits(b.bits, c.bits) + F.dot_bits(c.bits, a.bits)


# -- F_p^n and the sim_H relations --------------------------------------------

def _is_prime(p):
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def _check_field_size(p, n):
    if not _is_prime(p) or p > 13:
        raise ValueError(f"p must be a prime <= 13, got {p}")
    if not 1 <= n <= 6:
        raise ValueError(f"n must be in [1, 6], got {n}")


def _check_units_subgroup(p, H):
    H = frozenset(int(h) % p for h in H)
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if 0 in H or 1 not in H or any((h * k) % p not in H for h in H for k in H):
        raise ValueError(f"{sorted(H)} is not a subgroup of the units mod {p}")
    return H


def simH(p: int, H, n: int, a: Sequence[int], b: Sequence[int]) -> bool:
    """a ~_H b iff b = h a for some h in H (a, b nonzero vectors of F_p^n)."""
    _check_field_size(p, n)
    H = _check_units_subgroup(p, H)
    a = tuple(x % p for x in a)
    b = tuple(x % p for x in b)
    if len(a) != n or len(b) != n:
        raise DimensionMismatch(f"vectors must have length {n}")
    if not any(a) or not any(b):
        raise ValueError("sim_H is defined on nonzero vectors only")
    return any(tuple(h * x % p for x in a) == b for h in H)


def primitive_root(p):
    phi = p - 1
    factors = [q for q in range(2, phi + 1) if phi % q == 0 and _is_prime(q)]
    for g in range(1, p):
        if all(pow(g, phi // q, p) != 1 for q in factors):
            return g
    raise ValueError(p)


def unit_subgroups(p: int) -> list[frozenset]:
    """All subgroups of the cyclic group F_p^*, one per divisor of p - 1."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return [frozenset({1})]
    g = primitive_root(p)
    out = []
    for d in range(1, p):
        if (p - 1) % d == 0:
            gen = pow(g, (p - 1) // d, p)
            out.append(frozenset(pow(gen, i, p) for i in range(d)))
    return out


def fp_vectors(p, n):
    return list(itertools.product(range(p), repeat=n))


def _decode_fp(x, p, n):
    out = []
    for _ in range(n):
        out.append(x % p)
        x //= p
    return tuple(reversed(out))


def simH_classes(p: int, H, n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Partition of F_p^n minus 0 into sim_H classes, each sorted, sorted by first member."""
    _check_field_size(p, n)
    H = _check_units_subgroup(p, H)
    seen = set()
    classes = []
    for a in fp_vectors(p, n):
        if not any(a) or a in seen:
            continue
        cls = tuple(sorted({tuple(h * x % p for x in a) for h in H}))
        seen.update(cls)
        classes.append(cls)
    return classes


def fp_line(p, a):
    """The 1-dimensional subspace spanned by a."""
    return frozenset(tuple(c * x % p for x in a) for c in range(p))


# -- tabulation and preservation ----------------------------------------------

def _mesh(N, k):
    idx = np.arange(N, dtype=np.int64)
    return np.ix_(*([idx] * k))


def _distinct_mask(mesh):
    k = len(mesh)
    mask = np.ones([m.shape[i] for i, m in enumerate(mesh)], dtype=bool)
    for i in range(k):
        for j in range(i + 1, k):
            mask &= mesh[i] != mesh[j]
    return mask


@lru_cache(maxsize=64)
def relation_table(R: RelSpec) -> np.ndarray:
    """Boolean truth table of R over all N^arity tuples (read-only, cached)."""
    N, k = R.npoints, R.arity
    if N ** k > DEFAULT_EVAL_BUDGET:
        raise BudgetExhausted(f"truth table of {R.name} ({N}^{k} tuples)", DEFAULT_EVAL_BUDGET)
    if R.kind == "explicit":
        T = np.zeros((N,) * k, dtype=bool)
        if R.tuples:
            T[tuple(np.array(sorted(R.tuples)).T)] = True
    elif R.kind == "simh":
        p, H, n = R.field
        T = np.zeros((N, N), dtype=bool)
        for cls in simH_classes(p, H, n):
            codes = [sum(x * p ** (n - 1 - i) for i, x in enumerate(v)) for v in cls]
            T[np.ix_(codes, codes)] = True
    else:
        mesh = _mesh(N, k)
        if R.kind == "parallelogram":
            T = (mesh[0] ^ mesh[1] ^ mesh[2] ^ mesh[3]) == 0
        else:
            D = dot_table(R.form)
            if R.kind == "p0":
                T = D == 0
            elif R.kind == "p1":
                T = D == 1
            elif R.kind == "nabla":
                a, b, c = mesh
                T = _distinct_mask(mesh) & ((D[a, b] ^ D[b, c] ^ D[c, a]) == 1)
            elif R.kind == "diamond":
                a, b, c, d = mesh
                nz = (a != 0) & (b != 0) & (c != 0) & (d != 0)
                T = _distinct_mask(mesh) & nz & ((D[a, b] ^ D[b, c] ^ D[c, d] ^ D[d, a]) == 1)
            elif R.kind == "pentagon":
                nz = np.ones((1,) * k, dtype=bool)
                for m in mesh:
                    nz = nz & (m != 0)
                s = np.zeros((1,) * k, dtype=np.uint8)
                for x, y in itertools.combinations(mesh, 2):
                    s = s ^ D[x, y]
                T = _distinct_mask(mesh) & nz & (s == 1)
            else:
                raise AssertionError(R.kind)
        T = np.broadcast_to(T, (N,) * k).copy()
    T.setflags(write=False)
    return T


def _check_perm_domain(p: Perm, R: RelSpec):
    if p.degree != R.npoints:
        raise DimensionMismatch(f"perm acts on {p.degree} points, relation on {R.npoints}")


def _chunks(N, workers):
    workers = max(1, min(workers, N))
    bounds = np.linspace(0, N, workers + 1).astype(int)
    return [(int(bounds[i]), int(bounds[i + 1])) for i in range(workers)]


def _chunk_agrees(T, img, lo, hi):
    k = T.ndim
    idx = [img[lo:hi]] + [img] * (k - 1)
    return bool(np.array_equal(T[lo:hi], T[np.ix_(*idx)]))


def preserves(p: Perm, R: RelSpec, budget: int = DEFAULT_EVAL_BUDGET, mode: str = "exhaustive",
              samples: int = 100_000, seed: int = 0, workers: int = 1) -> bool:
    """R(t) <=> R(t^p) for every tuple t.

    ``mode="heuristic"`` checks random tuples only and is NOT a proof.
    """
    _check_perm_domain(p, R)
    if mode == "heuristic":
        return preserves_sampled(p, R, samples, seed)
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    N, k = R.npoints, R.arity
    if N ** k > budget:
        raise BudgetExhausted(f"exhaustive scan of {R.name} ({N}^{k} tuples)", budget)
    T = relation_table(R)
    img = p.images.astype(np.int64)
    parts = _chunks(N, workers)
    if len(parts) == 1:
        return _chunk_agrees(T, img, 0, N)
    with ThreadPoolExecutor(len(parts)) as ex:
        results = list(ex.map(lambda b: _chunk_agrees(T, img, *b), parts))
    return all(results)


def preserves_sampled(p: Perm, R: RelSpec, samples: int = 100_000, seed: int = 0) -> bool:
    """HEURISTIC: test ``samples`` random tuples. A True answer proves nothing."""
    _check_perm_domain(p, R)
    rng = random.Random(seed)
    N = R.npoints
    for _ in range(samples):
        t = tuple(rng.randrange(N) for _ in range(R.arity))
        if R.evaluate(t) != R.evaluate(p.apply_tuple(t)):
            return False
    return True


def find_violation(p: Perm, R: RelSpec, budget: int = DEFAULT_EVAL_BUDGET):
    """Lexicographically least tuple t with R(t) != R(t^p), or None."""
    _check_perm_domain(p, R)
    N, k = R.npoints, R.arity
    if N ** k > budget:
        raise BudgetExhausted(f"exhaustive scan of {R.name}", budget)
    T = relation_table(R)
    img = p.images.astype(np.int64)
    diff = T != T[np.ix_(*([img] * k))]
    hits = np.flatnonzero(diff.ravel())
    if hits.size == 0:
        return None
    return tuple(int(x) for x in np.unravel_index(hits[0], (N,) * k))


def group_preserves(G: GenSet, R: RelSpec, budget: int = DEFAULT_EVAL_BUDGET,
                    workers: int = 1) -> bool:
    """Preservation by all generators; equivalent to preservation by the group."""
    return all(preserves(g, R, budget=budget, workers=workers) for g in G.gens)


# -- explicit relation files ---------------------------------------------------

def parse_relation(text: str, dim: int, name: str = "explicit") -> RelSpec:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    head = lines[0].split()
    if len(head) != 2 or head[0] != "arity":
        raise ValueError("relation file must start with 'arity k'")
    k = int(head[1])
    tuples = []
    for ln in lines[1:]:
        pts = [parse_point(tok, dim) for tok in ln.replace(",", " ").split()]
        if len(pts) != k:
            raise ValueError(f"line {ln!r} does not have {k} points")
        tuples.append(pts)
    return RelSpec.explicit(dim, k, tuples, name=name)


def format_relation(R: RelSpec) -> str:
    if R.kind != "explicit":
        raise ValueError("only explicit relations serialize as tuple lists")
    lines = [f"arity {R.arity}"]
    for t in sorted(R.tuples):
        lines.append(" ".join(f"{x:#x}" for x in t))
    return "\n".join(lines) + "\n"
