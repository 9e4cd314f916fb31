"""Automorphism groups of finite relational structures on F_2^n by backtracking.

The search builds a stabilizer chain along the base 0, 1, 2, ...: for each
level i (deepest first) and each candidate image y of i, a DFS looks for an
automorphism fixing 0..i-1 and sending i to y. Candidates already in the
orbit of i under the generators found so far are skipped, so the output is
a strong generating set and the order is the product of the orbit sizes.

Pruning uses colours. Pair colours come from the per-position pair counts of
every relation (an automorphism must preserve them), vertex colours from a
few rounds of refinement; relations of arity >= 3 are additionally checked
exactly on every tuple that becomes fully assigned.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import prod

import numpy as np

from . import kernels
from .errors import BudgetExhausted, DimensionMismatch, InvariantViolation
from .forms import parse_form, standard_form
from .perm import GenSet, Perm, StabChain
from .perm import fixed_points as _fixed_points
from .relations import RelSpec, builtin_relation, parse_relation, preserves, relation_table

MAX_POINTS = 64
MAX_ARITY = 8
DEFAULT_NODE_LIMIT = 10 ** 7


@dataclass(frozen=True)
class Structure:
    dim: int
    relations: tuple[RelSpec, ...]
    fix_zero: bool = False

    def __post_init__(self):
        for R in self.relations:
            if R.kind == "simh" or R.dim != self.dim:
                raise DimensionMismatch(f"relation {R.name} does not live on F_2^{self.dim}")

    def all_relations(self):
        rels = list(self.relations)
        if self.fix_zero:
            rels.append(RelSpec.zeroset(self.dim))
        return rels


@dataclass
class AutResult:
    group: GenSet
    order: int
    orbit_sizes: list[int]
    nodes: int


# -- colouring -----------------------------------------------------------------

def _pair_features(tables, N):
    feats = [np.eye(N, dtype=np.int64)]
    for T in tables:
        k = T.ndim
        for i, j in itertools.permutations(range(k), 2):
            feats.append(np.moveaxis(T, (i, j), (0, 1)).reshape(N, N, -1).sum(axis=2))
    return np.stack(feats, axis=-1).reshape(N * N, -1)


def _vertex_features(tables, N):
    feats = [np.zeros(N, dtype=np.int64)]
    for T in tables:
        for i in range(T.ndim):
            feats.append(np.moveaxis(T, i, 0).reshape(N, -1).sum(axis=1))
    return np.stack(feats, axis=-1)


def _relabel(rows):
    _, inv = np.unique(rows, axis=0, return_inverse=True)
    return inv.reshape(-1).astype(np.int32)


def colouring(tables, N):
    """(pair colours C[x, y], vertex colours v[x]), both automorphism invariant."""
    tables = [np.asarray(T, dtype=np.int64) for T in tables]
    C = _relabel(_pair_features(tables, N)).reshape(N, N)
    v = _relabel(np.column_stack([_vertex_features(tables, N), np.diag(C)]))
    for _ in range(N):
        hist = []
        for x in range(N):
            out = sorted(zip(C[x].tolist(), v.tolist()))
            inc = sorted(zip(C[:, x].tolist(), v.tolist()))
            hist.append((int(v[x]), tuple(out), tuple(inc)))
        keys = {h: i for i, h in enumerate(sorted(set(hist)))}
        nv = np.array([keys[h] for h in hist], dtype=np.int32)
        if len(keys) == len(set(v.tolist())):
            break
        v = nv
    C = _relabel(np.column_stack([C.reshape(-1), np.repeat(v, N), np.tile(v, N)])).reshape(N, N)
    return C, v


def _masks(C, v):
    N = C.shape[0]
    ncol = int(C.max()) + 1
    bits = np.array([1 << z for z in range(N)], dtype=np.uint64)
    row = np.zeros((N, ncol), dtype=np.uint64)
    col = np.zeros((N, ncol), dtype=np.uint64)
    for y in range(N):
        for z in range(N):
            row[y, C[y, z]] |= bits[z]
            col[y, C[z, y]] |= bits[z]
    dom = np.array([np.bitwise_or.reduce(bits[v == v[x]]) for x in range(N)], dtype=np.uint64)
    return row, col, dom


class _Search:
    def __init__(self, S: Structure):
        N = 1 << S.dim
        if N > MAX_POINTS:
            raise ValueError(f"automorphism search supports at most {MAX_POINTS} points")
        rels = S.all_relations()
        for R in rels:
            if R.arity > MAX_ARITY:
                raise ValueError(f"relation arity above {MAX_ARITY} unsupported")
        self.N = N
        self.rels = rels
        tables = [relation_table(R) for R in rels]
        self.C, self.v = colouring(tables, N)
        self.row, self.col, self.dom = _masks(self.C, self.v)
        exact = [T for T in tables if T.ndim >= 3]
        self.arity = np.array([T.ndim for T in exact], dtype=np.int32)
        sizes = [T.size for T in exact]
        self.offset = np.array(np.cumsum([0] + sizes[:-1]), dtype=np.int64)
        self.tables = (np.concatenate([T.ravel() for T in exact]).astype(np.uint8)
                       if exact else np.zeros(0, dtype=np.uint8))

    def prefix_domain(self, i):
        """Domain of point i once 0..i-1 are fixed."""
        d = int(self.dom[i])
        for j in range(i):
            d &= int(self.row[j, self.C[j, i]]) & int(self.col[j, self.C[i, j]]) & ~(1 << j)
        return d

    def search(self, i, y, limit):
        full = (1 << self.N) - 1
        forced = np.array([1 << j for j in range(i)] + [1 << y] + [full] * (self.N - i - 1),
                          dtype=np.uint64)
        return kernels.find_extension(self.C, self.row, self.col, self.dom, forced,
                                      self.arity, self.offset, self.tables, limit)


def _orbit(point, gens):
    seen = {point}
    todo = [point]
    while todo:
        x = todo.pop()
        for g in gens:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def automorphisms(S: Structure, node_limit: int = DEFAULT_NODE_LIMIT, workers: int = 1,
                  verify: bool = True) -> AutResult:
    """Strong generators and exact order of Aut(S)."""
    srch = _Search(S)
    N = srch.N
    gens: list[np.ndarray] = []
    sizes = [1] * N
    nodes = 0
    workers = max(1, int(workers))
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        for i in range(N - 1, -1, -1):
            orbit = _orbit(i, gens)
            dom = srch.prefix_domain(i)
            cands = [y for y in range(N) if dom >> y & 1 and y != i]
            pos = 0
            while pos < len(cands):
                batch = []
                while pos < len(cands) and len(batch) < workers:
                    if cands[pos] not in orbit:
                        batch.append(cands[pos])
                    pos += 1
                if not batch:
                    break
                remaining = node_limit - nodes
                if pool is None:
                    results = [srch.search(i, batch[0], remaining)]
                else:
                    results = list(pool.map(lambda y: srch.search(i, y, remaining), batch))
                for y, (img, used, exhausted) in zip(batch, results):
                    nodes += used
                    if exhausted or nodes > node_limit:
                        raise BudgetExhausted("automorphism search nodes", node_limit)
                    # merge in increasing y; later hits already covered are dropped
                    if img is None or y in orbit:
                        continue
                    gens.append(img)
                    orbit = _orbit(i, gens)
            sizes[i] = len(orbit)
    finally:
        if pool is not None:
            pool.shutdown()
    perms = [Perm(S.dim, g) for g in gens]
    G = GenSet(perms, dim=S.dim, name="aut")
    order = prod(sizes)
    if verify:
        for p in perms:
            for R in srch.rels:
                if not preserves(p, R):
                    raise InvariantViolation(f"found map does not preserve {R.name}")
        if G.order() != order:
            raise InvariantViolation(f"orbit product {order} != chain order {G.order()}")
    return AutResult(G, order, sizes, nodes)


def pointwise_stabilizer(G: GenSet, t) -> GenSet:
    """Generators of the subgroup fixing every point of t."""
    t = [int(x) for x in t]
    if any(not 0 <= x < G.degree for x in t):
        raise ValueError("point out of range")
    base = list(dict.fromkeys(t))
    chain = StabChain(G.degree, [g.images for g in G.gens], base_prefix=base)
    gens = [Perm(G.dim, g, check=False) for g in chain.stabilizer_generators(len(base))]
    return GenSet(gens, dim=G.dim, name="stab")


def fixed_points(G: GenSet) -> set[int]:
    return set(_fixed_points(G))


# -- structure files -----------------------------------------------------------

def parse_structure(text: str, base_dir=None) -> Structure:
    """Lines: ``dim n``, optional ``form standard`` or ``form <path>``,
    ``relation <name-or-path>`` (repeatable), optional ``fix-zero``."""
    from pathlib import Path

    dim = None
    F = None
    names = []
    fix_zero = False
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        key, _, val = ln.partition(" ")
        val = val.strip()
        if key == "dim":
            dim = int(val)
        elif key == "form":
            if val == "standard":
                F = standard_form(dim // 2)
            else:
                F = parse_form(Path(base_dir or ".", val).read_text())
        elif key == "relation":
            names.append(val)
        elif key == "fix-zero":
            fix_zero = True
        else:
            raise ValueError(f"unknown structure line {ln!r}")
    if dim is None:
        raise ValueError("structure file needs a 'dim n' line")
    rels = []
    for name in names:
        if name.startswith("file:"):
            path = Path(base_dir or ".", name[5:])
            rels.append(parse_relation(path.read_text(), dim, name=path.stem))
        else:
            rels.append(builtin_relation(name, dim, F))
    return Structure(dim, tuple(rels), fix_zero)
