"""Finite symplectic spaces: axioms, embeddings, joint embedding, free
amalgamation, extension witnesses and graph-realizing bases."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateForm, DependentInput, DimensionMismatch
from .forms import BilinForm, extension_candidates
from .gf2 import MAX_DIM, Vec2, apply_linear_bits, echelon_bits, independent_bits, inverse_matrix_bits, reduce_bits

FinSymplSpace = BilinForm


def check_axioms(F) -> tuple[bool, tuple[Vec2, ...] | None]:
    """(True, None) for a zero-diagonal symmetric Gram matrix, else (False, witness).

    The witness is (e_i,) for a diagonal 1 and (e_i, e_j) for an asymmetric pair.
    Accepts a BilinForm or any square 0/1 matrix.
    """
    m = F.matrix() if isinstance(F, BilinForm) else [[int(x) & 1 for x in row] for row in F]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("gram matrix must be square")
    for i in range(n):
        if m[i][i]:
            return False, (Vec2.unit(n, i + 1),)
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                return False, (Vec2.unit(n, i + 1), Vec2.unit(n, j + 1))
    return True, None


@dataclass(frozen=True)
class Embedding:
    """Linear map source -> target sending e_j to ``images[j]``."""

    source: BilinForm
    target: BilinForm
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.dim:
            raise ValueError("need one image per source basis vector")
        if any(not 0 <= x < (1 << self.target.dim) for x in self.images):
            raise DimensionMismatch("image outside the target space")

    def __call__(self, x: int) -> int:
        return apply_linear_bits(self.images, x)

    def then(self, other: "Embedding") -> "Embedding":
        """x -> other(self(x))."""
        if other.source != self.target:
            raise ValueError("embeddings do not compose")
        return Embedding(self.source, other.target, tuple(other(x) for x in self.images))

    def is_valid(self) -> bool:
        if not independent_bits(self.images):
            return False
        S, T = self.source, self.target
        return all(T.dot_bits(self.images[i], self.images[j]) == S.entry(i, j)
                   for i in range(S.dim) for j in range(S.dim))


def _require(phi: Embedding):
    if not phi.is_valid():
        raise ValueError("not an injective form-preserving embedding")


def identity_embedding(A: BilinForm) -> Embedding:
    return Embedding(A, A, tuple(1 << j for j in range(A.dim)))


def find_embedding(A: BilinForm, B: BilinForm) -> Embedding | None:
    """Smallest-first backtracking over partial isometric bases; None if A does not embed."""
    if A.dim > B.dim:
        return None
    chosen: list[int] = []
    iters = []
    while True:
        if len(chosen) == A.dim:
            return Embedding(A, B, tuple(chosen))
        i = len(chosen)
        if len(iters) == i:
            targets = [A.entry(j, i) for j in range(i)]
            iters.append(extension_candidates(B, chosen, targets))
        w = next(iters[i], None)
        if w is None:
            iters.pop()
            if not chosen:
                return None
            chosen.pop()
            continue
        chosen.append(w)


def direct_sum(A: BilinForm, B: BilinForm) -> BilinForm:
    n = A.dim + B.dim
    if n > MAX_DIM:
        raise ValueError(f"sum dimension {n} exceeds {MAX_DIM}")
    return BilinForm(n, tuple(A.rows) + tuple(r << A.dim for r in B.rows))


def joint_embed(A: BilinForm, B: BilinForm):
    """A (+) B with zero cross products, and the two canonical injections."""
    S = direct_sum(A, B)
    iA = Embedding(A, S, tuple(1 << j for j in range(A.dim)))
    iB = Embedding(B, S, tuple(1 << (A.dim + j) for j in range(B.dim)))
    return S, iA, iB


def _complement(vectors, dim):
    """Standard basis vectors extending ``vectors`` to a basis, lowest index first."""
    ech = echelon_bits(vectors)
    out = []
    for j in range(dim):
        if reduce_bits(1 << j, ech):
            out.append(1 << j)
            ech = echelon_bits(list(ech) + [1 << j])
    return out


def amalgamate(S1: BilinForm, S2: BilinForm, S3: BilinForm, phi1: Embedding, phi2: Embedding):
    """Free amalgam of S1 and S2 over S3: returns (S4, psi1, psi2) with
    phi1 then psi1 equal to phi2 then psi2, and zero products between the
    two complements."""
    for phi, tgt in ((phi1, S1), (phi2, S2)):
        if phi.source != S3 or phi.target != tgt:
            raise ValueError("embedding has the wrong source or target")
        _require(phi)
    k = S3.dim
    U1, U2 = list(phi1.images), list(phi2.images)
    C1, C2 = _complement(U1, S1.dim), _complement(U2, S2.dim)
    a, b = len(C1), len(C2)
    n = k + a + b
    if n > MAX_DIM:
        raise ValueError(f"amalgam dimension {n} exceeds {MAX_DIM}")
    # basis of S4: S3 basis, then C1, then C2
    gram = [[0] * n for _ in range(n)]
    part1 = U1 + C1
    for i in range(k + a):
        for j in range(k + a):
            gram[i][j] = S1.dot_bits(part1[i], part1[j])
    part2 = U2 + C2
    idx2 = list(range(k)) + list(range(k + a, n))
    for i in range(k + b):
        for j in range(k + b):
            gram[idx2[i]][idx2[j]] = S2.dot_bits(part2[i], part2[j])
    S4 = BilinForm.from_matrix(gram) if n else BilinForm.zero(0)

    def lift(S, part, positions):
        inv = inverse_matrix_bits(part, S.dim)
        imgs = []
        for j in range(S.dim):
            coords = inv[j]
            y = 0
            for c, pos in enumerate(positions):
                if coords >> c & 1:
                    y |= 1 << pos
            imgs.append(y)
        return Embedding(S, S4, tuple(imgs))

    psi1 = lift(S1, part1, list(range(k + a)))
    psi2 = lift(S2, part2, idx2)
    _require(psi1)
    _require(psi2)
    if phi1.then(psi1).images != phi2.then(psi2).images:
        raise AssertionError("amalgam square does not commute")
    return S4, psi1, psi2


def extension_witness(F: BilinForm, a: Sequence[Vec2], targets: Sequence[int]) -> Vec2 | None:
    """Smallest w outside span(a) with a_j . w = targets[j], or None."""
    if not F.nondegenerate:
        raise DegenerateForm("extension_witness needs a nondegenerate form")
    if len(a) != len(targets):
        raise ValueError("a and targets differ in length")
    if len(a) > F.dim:
        raise ValueError("more vectors than the dimension")
    for v in a:
        if v.dim != F.dim:
            raise DimensionMismatch(f"vector dim {v.dim} vs form dim {F.dim}")
    bits = [v.bits for v in a]
    if not independent_bits(bits):
        raise DependentInput("extension_witness needs an independent tuple")
    w = next(extension_candidates(F, bits, [int(t) & 1 for t in targets]), None)
    return None if w is None else Vec2(F.dim, w)


def _check_graph(adj):
    k = len(adj)
    for i in range(k):
        if len(adj[i]) != k:
            raise ValueError("adjacency matrix must be square")
        if adj[i][i]:
            raise ValueError("adjacency matrix must be loop-free")
        for j in range(k):
            if bool(adj[i][j]) != bool(adj[j][i]):
                raise ValueError("adjacency matrix must be symmetric")


def realize_graph(adj, F: BilinForm) -> tuple[Vec2, ...] | None:
    """Independent b_1..b_k with b_i . b_j = adj[i][j], built greedily; None if it stalls."""
    _check_graph(adj)
    k = len(adj)
    if k > F.dim:
        raise ValueError("more vertices than the dimension")
    out: list[Vec2] = []
    for i in range(k):
        w = extension_witness(F, out, [int(adj[j][i]) for j in range(i)])
        if w is None:
            return None
        out.append(w)
    return tuple(out)


def parse_graph(text: str):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    k = int(lines[0])
    rows = []
    for ln in lines[1:1 + k]:
        bits = ln.replace(" ", "").replace(",", "")
        if len(bits) != k or set(bits) - {"0", "1"}:
            raise ValueError(f"bad adjacency row {ln!r}")
        rows.append([int(c) for c in bits])
    if len(rows) != k:
        raise ValueError("missing adjacency rows")
    _check_graph(rows)
    return rows


def format_graph(adj) -> str:
    return "\n".join([str(len(adj))] + ["".join(str(int(x)) for x in row) for row in adj]) + "\n"
