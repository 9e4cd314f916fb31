"""Pure-Python versions of the compiled kernels (same signatures, same results)."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


def image_codes(gens, k, lo, hi):
    """Image codes of tuple codes lo..hi-1 under every generator, shape (g, hi-lo)."""
    N = gens.shape[1]
    codes = np.arange(lo, hi, dtype=np.int64)
    out = np.zeros((gens.shape[0], hi - lo), dtype=np.int64)
    place = 1
    rem = codes
    for _ in range(k):
        digit = rem % N
        out += gens[:, digit].astype(np.int64) * place
        rem = rem // N
        place *= N
    return out


def labels_from_images(images, mask):
    """Canonical orbit labels from a full image table (see orbit_labels)."""
    g, M = images.shape
    src = np.tile(np.arange(M, dtype=np.int64), g)
    graph = coo_matrix((np.ones(g * M, dtype=np.int8), (src, images.ravel())), shape=(M, M))
    _, comp = connected_components(graph, directed=True, connection="weak")
    full = np.bincount(comp)
    masked = np.flatnonzero(mask)
    first = np.full(full.size, M, dtype=np.int64)
    np.minimum.at(first, comp[masked], masked)
    hit = np.flatnonzero(first < M)
    order = hit[np.argsort(first[hit], kind="stable")]
    rank = np.full(full.size, -1, dtype=np.int32)
    rank[order] = np.arange(order.size, dtype=np.int32)
    labels = np.where(mask.astype(bool), rank[comp], -1).astype(np.int32)
    return labels, full[order].astype(np.int64)


def orbit_labels(gens, k, mask):
    M = mask.shape[0]
    return labels_from_images(image_codes(np.asarray(gens), k, 0, M), mask)


@lru_cache(maxsize=None)
def _tuples_with(k, m):
    """All tuples over {0..m}^k containing m, as a (count, k) array."""
    grids = np.indices((m + 1,) * k).reshape(k, -1).T
    return np.ascontiguousarray(grids[(grids == m).any(axis=1)])


def _exact_ok(m, img, arity, offset, tables, N):
    for r in range(len(arity)):
        k = int(arity[r])
        t = _tuples_with(k, m)
        w = N ** np.arange(k - 1, -1, -1, dtype=np.int64)
        src = t @ w
        dst = img[t] @ w
        base = int(offset[r])
        if not np.array_equal(tables[base + src], tables[base + dst]):
            return False
    return True


def find_extension(C, rowmask, colmask, init_dom, forced, arity, offset, tables, node_limit):
    N = C.shape[0]
    row = [[int(x) for x in r] for r in rowmask]
    col = [[int(x) for x in r] for r in colmask]
    Cl = C.tolist()
    forced = [int(x) for x in forced]
    img = np.zeros(N, dtype=np.int64)
    doms = [[0] * N for _ in range(N + 1)]
    doms[0] = [int(x) for x in init_dom]
    cand = [0] * (N + 1)
    cand[0] = doms[0][0] & forced[0]
    nodes = 0
    m = 0
    while True:
        if m == N:
            return img.astype(np.int32), nodes, False
        if cand[m] == 0:
            m -= 1
            if m < 0:
                return None, nodes, False
            continue
        c = cand[m]
        y = (c & -c).bit_length() - 1
        cand[m] = c & ~(1 << y)
        nodes += 1
        if nodes > node_limit:
            return None, nodes, True
        img[m] = y
        if len(arity) and not _exact_ok(m, img[:m + 1], arity, offset, tables, N):
            continue
        cur, nxt = doms[m], doms[m + 1]
        ry, cy, Cm = row[y], col[y], Cl[m]
        notb = ~(1 << y)
        ok = True
        union = 0
        for u in range(m + 1, N):
            d = cur[u] & ry[Cm[u]] & cy[Cl[u][m]] & notb
            if not d:
                ok = False
                break
            nxt[u] = d
            union |= d
        if not ok or bin(union).count("1") < N - m - 1:
            continue
        m += 1
        if m < N:
            cand[m] = doms[m][m] & forced[m]
