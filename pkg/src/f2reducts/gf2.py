"""Linear algebra over GF(2) on bit-packed vectors.

A vector of F_2^n is an integer whose bit ``i`` is coordinate ``i``; the
same integer is the point index used by permutations. ``Vec2`` carries the
dimension alongside the bits for the public API, while the ``*_bits``
helpers work on raw integers and are what the rest of the package uses in
inner loops.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch

MAX_DIM = 24


def check_dim(dim, lo=1):
    if not isinstance(dim, int) or not lo <= dim <= MAX_DIM:
        raise ValueError(f"dimension must be in [{lo}, {MAX_DIM}], got {dim!r}")


@dataclass(frozen=True)
class Vec2:
    dim: int
    bits: int

    def __post_init__(self):
        check_dim(self.dim)
        if not 0 <= self.bits < (1 << self.dim):
            raise ValueError(f"bits {self.bits:#x} out of range for dim {self.dim}")

    @classmethod
    def zero(cls, dim):
        return cls(dim, 0)

    @classmethod
    def unit(cls, dim, i):
        """The standard basis vector e_i (1-based, as in e1, e2, ...)."""
        return cls(dim, 1 << (i - 1))

    def __add__(self, other):
        return add(self, other)

    def __int__(self):
        return self.bits

    def __repr__(self):
        return f"Vec2({self.dim}, {self.bits:#x})"

    def __str__(self):
        return format_point(self.bits)


def add(u: Vec2, v: Vec2) -> Vec2:
    if u.dim != v.dim:
        raise DimensionMismatch(f"cannot add vectors of dims {u.dim} and {v.dim}")
    return Vec2(u.dim, u.bits ^ v.bits)


def parity(x: int) -> int:
    return bin(x).count("1") & 1


# -- raw-integer helpers -------------------------------------------------------

def echelon_bits(rows: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon basis of the span of ``rows``.

    Pivot of a row is its lowest set bit; rows are sorted by pivot and every
    pivot bit is cleared from all other rows, so the result is canonical.
    """
    basis: dict[int, int] = {}  # pivot bit -> row
    for r in rows:
        for p, b in basis.items():
            if r >> p & 1:
                r ^= b
        if not r:
            continue
        p = (r & -r).bit_length() - 1
        for q in list(basis):
            if basis[q] >> p & 1:
                basis[q] ^= r
        basis[p] = r
    return tuple(basis[p] for p in sorted(basis))


def reduce_bits(v: int, basis: Sequence[int]) -> int:
    """Reduce ``v`` against a reduced echelon basis; zero iff v is in the span."""
    for b in basis:
        p = (b & -b).bit_length() - 1
        if v >> p & 1:
            v ^= b
    return v


def rank_bits(rows: Iterable[int]) -> int:
    return len(echelon_bits(rows))


def independent_bits(rows: Sequence[int]) -> bool:
    return rank_bits(rows) == len(rows)


def span_elements(basis: Sequence[int]) -> list[int]:
    """All 2^r elements of the span of independent ``basis`` (gray-code order)."""
    out = [0]
    for b in basis:
        out += [x ^ b for x in out]
    return out


def sorted_coset(particular: int, kernel: Sequence[int]) -> Iterator[int]:
    """Yield every element of ``particular + span(kernel)`` in increasing order."""
    # echelon with pivot = highest bit makes the element map monotone in the
    # binary counter over basis rows sorted by pivot
    basis: dict[int, int] = {}
    for r in kernel:
        for p, b in sorted(basis.items(), reverse=True):
            if r >> p & 1:
                r ^= b
        if not r:
            continue
        p = r.bit_length() - 1
        for q in list(basis):
            if basis[q] >> p & 1:
                basis[q] ^= r
        basis[p] = r
    for p, b in basis.items():
        if particular >> p & 1:
            particular ^= b
    rows = [basis[p] for p in sorted(basis)]
    for c in range(1 << len(rows)):
        x = particular
        i = 0
        while c:
            if c & 1:
                x ^= rows[i]
            c >>= 1
            i += 1
        yield x


def solve_bits(rows: Sequence[int], rhs: Sequence[int], dim: int):
    """Solve ``parity(rows[i] & x) == rhs[i]`` for x in F_2^dim.

    Returns ``(particular, kernel_basis)`` or ``None`` when inconsistent.
    """
    if len(rows) != len(rhs):
        raise ValueError("rows and right-hand side differ in length")
    aug = [r | ((b & 1) << dim) for r, b in zip(rows, rhs)]
    mask = (1 << dim) - 1
    pivots: dict[int, int] = {}
    for r in aug:
        for p, b in pivots.items():
            if r >> p & 1:
                r ^= b
        if not r & mask:
            if r:
                return None
            continue
        p = (r & -r).bit_length() - 1
        for q in list(pivots):
            if pivots[q] >> p & 1:
                pivots[q] ^= r
        pivots[p] = r
    particular = 0
    for p, r in pivots.items():
        if r >> dim & 1:
            particular |= 1 << p
    kernel = []
    for f in range(dim):
        if f in pivots:
            continue
        v = 1 << f
        for p, r in pivots.items():
            if r >> f & 1:
                v |= 1 << p
        kernel.append(v)
    return particular, tuple(kernel)


def inverse_matrix_bits(cols: Sequence[int], dim: int) -> tuple[int, ...]:
    """Invert the linear map sending e_j to ``cols[j]``.

    Returns ``inv`` with ``inv[j]`` the preimage of e_j. Raises
    ``DependentInput`` if the columns are not a basis.
    """
    from .errors import DependentInput

    if len(cols) != dim:
        raise ValueError("need exactly dim columns")
    # rows of the augmented system: column vector | (identity marker)
    work = [(c, 1 << j) for j, c in enumerate(cols)]
    inv = [0] * dim
    used: dict[int, tuple[int, int]] = {}
    for c, tag in work:
        for p, (bc, bt) in used.items():
            if c >> p & 1:
                c ^= bc
                tag ^= bt
        if not c:
            raise DependentInput("columns are linearly dependent")
        p = (c & -c).bit_length() - 1
        for q in list(used):
            qc, qt = used[q]
            if qc >> p & 1:
                used[q] = (qc ^ c, qt ^ tag)
        used[p] = (c, tag)
    for p, (c, tag) in used.items():
        # c == e_p after full reduction; tag is its preimage
        inv[p] = tag
    return tuple(inv)


def apply_linear_bits(images: Sequence[int], x: int) -> int:
    """Image of x under the linear map e_j -> images[j]."""
    y = 0
    j = 0
    while x:
        if x & 1:
            y ^= images[j]
        x >>= 1
        j += 1
    return y


# -- public Vec2-level API -----------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of F_2^dim held as a reduced echelon basis of bit rows."""

    dim: int
    basis: tuple[int, ...]

    @property
    def rank(self):
        return len(self.basis)

    def vectors(self):
        return tuple(Vec2(self.dim, b) for b in self.basis)

    def elements(self):
        return sorted(span_elements(self.basis))

    def __contains__(self, v):
        return contains(self, v)


def _shared_dim(vectors, dim=None):
    for v in vectors:
        if dim is None:
            dim = v.dim
        elif v.dim != dim:
            raise DimensionMismatch(f"mixed dimensions {dim} and {v.dim}")
    return dim


def span(vectors: Sequence[Vec2], dim: int | None = None) -> Subspace:
    vectors = list(vectors)
    dim = _shared_dim(vectors, dim)
    if dim is None:
        raise ValueError("dimension required to span an empty sequence")
    return Subspace(dim, echelon_bits(v.bits for v in vectors))


def contains(S: Subspace, v: Vec2) -> bool:
    if v.dim != S.dim:
        raise DimensionMismatch(f"vector dim {v.dim} vs subspace dim {S.dim}")
    return reduce_bits(v.bits, S.basis) == 0


@dataclass(frozen=True)
class Solution:
    """Affine solution set: ``particular + span(kernel)``."""

    particular: Vec2
    kernel: tuple[Vec2, ...]

    @property
    def count(self):
        return 1 << len(self.kernel)

    def __iter__(self):
        dim = self.particular.dim
        for x in sorted_coset(self.particular.bits, [k.bits for k in self.kernel]):
            yield Vec2(dim, x)

    def __contains__(self, v):
        d = v.bits ^ self.particular.bits
        return reduce_bits(d, echelon_bits(k.bits for k in self.kernel)) == 0


def solve(A: Sequence[Vec2], b: Sequence[int], dim: int | None = None) -> Solution | None:
    """Solve the system whose i-th equation is <A[i], x> = b[i] (dot product)."""
    A = list(A)
    dim = _shared_dim(A, dim)
    if dim is None:
        raise ValueError("dimension required for an empty system")
    res = solve_bits([a.bits for a in A], list(b), dim)
    if res is None:
        return None
    part, ker = res
    return Solution(Vec2(dim, part), tuple(Vec2(dim, k) for k in ker))


# -- point literals ------------------------------------------------------------

_SYMBOLIC = re.compile(r"^e(\d+)$")


def parse_point(text: str, dim: int | None = None) -> int:
    """Parse ``0x5``, ``5``, ``0`` or symbolic sums like ``e1+e3``."""
    s = text.strip().lower()
    if not s:
        raise ValueError("empty point literal")
    if s.startswith("0x"):
        v = int(s, 16)
    elif s.isdigit():
        v = int(s)
    else:
        v = 0
        for term in s.split("+"):
            term = term.strip()
            m = _SYMBOLIC.match(term)
            if m is None:
                if term == "0":
                    continue
                raise ValueError(f"bad point literal {text!r}")
            i = int(m.group(1))
            if i < 1:
                raise ValueError(f"basis index must be >= 1 in {text!r}")
            v ^= 1 << (i - 1)
    if dim is not None and v >= 1 << dim:
        raise ValueError(f"point {text!r} out of range for dim {dim}")
    return v


def format_point(bits: int) -> str:
    return f"{bits:#x}"


def format_tuple(points: Iterable[int]) -> str:
    return ",".join(format_point(p) for p in points)
