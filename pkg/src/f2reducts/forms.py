"""Alternating bilinear forms over F_2 and their isometries."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DegenerateForm, DependentInput, DimensionMismatch, GramMismatch
from .gf2 import (
    MAX_DIM,
    Vec2,
    apply_linear_bits,
    echelon_bits,
    independent_bits,
    inverse_matrix_bits,
    parity,
    rank_bits,
    reduce_bits,
    solve_bits,
    sorted_coset,
)


@dataclass(frozen=True)
class BilinForm:
    """Gram matrix of an alternating form; ``rows[i]`` bit j is e_i . e_j.

    Dimension 0 is allowed (the zero space of the Fraisse class).
    """

    dim: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.dim <= MAX_DIM:
            raise ValueError(f"form dimension {self.dim} out of range")
        if len(self.rows) != self.dim:
            raise ValueError("need one row per dimension")
        for i, r in enumerate(self.rows):
            if not 0 <= r < (1 << self.dim):
                raise ValueError(f"row {i} has bits outside the dimension")
            if r >> i & 1:
                raise ValueError(f"diagonal entry ({i},{i}) is 1; form is not alternating")
            for j in range(self.dim):
                if (r >> j & 1) != (self.rows[j] >> i & 1):
                    raise ValueError(f"gram is not symmetric at ({i},{j})")

    @classmethod
    def from_matrix(cls, matrix):
        m = [[int(x) & 1 for x in row] for row in matrix]
        return cls(len(m), tuple(sum(b << j for j, b in enumerate(row)) for row in m))

    @classmethod
    def zero(cls, dim):
        return cls(dim, (0,) * dim)

    def entry(self, i, j):
        return self.rows[i] >> j & 1

    def matrix(self):
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]

    @cached_property
    def rank(self):
        return rank_bits(self.rows)

    @property
    def nondegenerate(self):
        return self.rank == self.dim

    def image(self, v: int) -> int:
        """G v as a bit vector, so that dot(u, v) = parity(u & G v)."""
        return apply_linear_bits(self.rows, v)

    def dot_bits(self, u: int, v: int) -> int:
        return parity(u & self.image(v))

    def radical(self):
        """Basis of {x : x . y = 0 for all y}."""
        res = solve_bits(list(self.rows), [0] * self.dim, self.dim)
        return res[1]


def dot(F: BilinForm, u: Vec2, v: Vec2) -> int:
    if u.dim != F.dim or v.dim != F.dim:
        raise DimensionMismatch(f"form dim {F.dim}, vectors {u.dim} and {v.dim}")
    return F.dot_bits(u.bits, v.bits)


def dot_table(F: BilinForm) -> np.ndarray:
    """N x N uint8 table of x . y over all points."""
    n = F.dim
    pts = np.arange(1 << n, dtype=np.int64)
    bits = ((pts[:, None] >> np.arange(n)) & 1).astype(np.uint8)
    gram = np.array(F.matrix(), dtype=np.uint8).reshape(n, n)
    return ((bits @ gram @ bits.T) & 1).astype(np.uint8)


def standard_form(m: int) -> BilinForm:
    """Block diagonal form on F_2^{2m} with hyperbolic pairs (e1,e2), (e3,e4), ..."""
    if m < 1:
        raise ValueError("standard_form needs m >= 1")
    rows = []
    for i in range(2 * m):
        rows.append(1 << (i ^ 1))
    return BilinForm(2 * m, tuple(rows))


def hyperbolic_basis(F: BilinForm) -> list[tuple[int, int]]:
    """Symplectic Gram-Schmidt on the standard basis.

    Returns pairs (u, v) with u . v = 1 and all cross products 0.
    """
    if not F.nondegenerate:
        raise DegenerateForm("hyperbolic basis needs a nondegenerate form")
    work = [1 << i for i in range(F.dim)]
    pairs = []
    while work:
        u = work.pop(0)
        k = next(i for i, w in enumerate(work) if F.dot_bits(u, w))
        v = work.pop(k)
        work = [w ^ (F.dot_bits(w, v) * u) ^ (F.dot_bits(w, u) * v) for w in work]
        pairs.append((u, v))
    return pairs


def gram_of(F: BilinForm, vectors: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(F.dot_bits(a, b) for b in vectors) for a in vectors)


def extension_candidates(F: BilinForm, base: Sequence[int], targets: Sequence[int]):
    """Vectors w with base[j] . w = targets[j], increasing, skipping span(base)."""
    res = solve_bits([F.image(a) for a in base], list(targets), F.dim)
    if res is None:
        return
    span_basis = echelon_bits(base)
    for w in sorted_coset(*res):
        if reduce_bits(w, span_basis):
            yield w


def witt_extend(F: BilinForm, src: Sequence[Vec2], dst: Sequence[Vec2]):
    """A symplectic linear permutation g with src[i]^g = dst[i].

    Both tuples are greedily extended to full bases with equal Gram
    matrices, always choosing the smallest admissible encoding.
    """
    from .perm import linear_perm

    if not F.nondegenerate:
        raise DegenerateForm("witt_extend needs a nondegenerate form")
    if len(src) != len(dst):
        raise ValueError("src and dst differ in length")
    for v in list(src) + list(dst):
        if v.dim != F.dim:
            raise DimensionMismatch(f"vector dim {v.dim} vs form dim {F.dim}")
    a = [v.bits for v in src]
    b = [v.bits for v in dst]
    if not independent_bits(a) or not independent_bits(b):
        raise DependentInput("witt_extend needs linearly independent tuples")
    if gram_of(F, a) != gram_of(F, b):
        raise GramMismatch("src and dst have different Gram matrices")
    while len(a) < F.dim:
        ech = echelon_bits(a)
        j = next(j for j in range(F.dim) if reduce_bits(1 << j, ech))
        x = 1 << j
        targets = [F.dot_bits(s, x) for s in a]
        # Witt's theorem guarantees a partner exists for any x outside span(a)
        y = next(extension_candidates(F, b, targets))
        a.append(x)
        b.append(y)
    inv = inverse_matrix_bits(a, F.dim)
    cols = [apply_linear_bits(b, inv[j]) for j in range(F.dim)]
    return linear_perm(F.dim, cols)


def format_form(F: BilinForm) -> str:
    lines = [f"dim {F.dim}"]
    lines += [f"{r:#x}" for r in F.rows]
    return "\n".join(lines) + "\n"


def parse_form(text: str) -> BilinForm:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim":
        raise ValueError("form file must start with 'dim n'")
    n = int(head[1])
    rows = tuple(int(x, 16) for x in lines[1:1 + n])
    return BilinForm(n, rows)
