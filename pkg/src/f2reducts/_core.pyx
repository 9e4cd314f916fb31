# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: tuple-orbit labelling and the automorphism DFS.

Both functions mirror ``_fallback`` exactly; only speed differs.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int32_t, int64_t, uint64_t, uint8_t
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def orbit_labels(int32_t[:, ::1] gens, int k, cnp.uint8_t[::1] mask):
    """Label k-tuple codes by orbit.

    Returns (labels, full_sizes). labels[c] is the class id of code c when
    mask[c] is set, else -1; classes are numbered by their least masked
    code. full_sizes[i] is the size of the whole orbit of class i.
    """
    cdef int64_t N = gens.shape[1]
    cdef int g = gens.shape[0]
    cdef int64_t M = mask.shape[0]
    cdef int64_t c, x, y, head, tail, rem, place, img
    cdef int i, j, cls = 0
    labels_np = np.full(M, -1, dtype=np.int32)
    cdef int32_t[::1] labels = labels_np
    seen_np = np.zeros(M, dtype=np.uint8)
    cdef cnp.uint8_t[::1] seen = seen_np
    queue_np = np.empty(M, dtype=np.int64)
    cdef int64_t[::1] queue = queue_np
    sizes = []
    cdef int64_t size
    with nogil:
        for c in range(M):
            if not mask[c] or seen[c]:
                continue
            head = 0
            tail = 1
            queue[0] = c
            seen[c] = 1
            while head < tail:
                x = queue[head]
                head += 1
                if mask[x]:
                    labels[x] = cls
                for j in range(g):
                    rem = x
                    place = 1
                    img = 0
                    for i in range(k):
                        img += gens[j, rem % N] * place
                        rem //= N
                        place *= N
                    if not seen[img]:
                        seen[img] = 1
                        queue[tail] = img
                        tail += 1
            with gil:
                sizes.append(tail)
            cls += 1
    return labels_np, np.array(sizes, dtype=np.int64)


cdef inline bint _exact_ok(int m, int32_t *img, int nrel, const int32_t *arity,
                           const int64_t *offset, const uint8_t *tables, int64_t N,
                           int32_t *digits) noexcept nogil:
    # every tuple over {0..m} containing m must keep its truth value
    cdef int r, k, p, i
    cdef int64_t src, dst
    cdef bint carry
    for r in range(nrel):
        k = arity[r]
        for p in range(k):
            # digits before p range over 0..m-1, digit p is m, after p over 0..m
            if p > 0 and m == 0:
                break
            for i in range(k):
                digits[i] = 0
            digits[p] = m
            while True:
                src = 0
                dst = 0
                for i in range(k):
                    src = src * N + digits[i]
                    dst = dst * N + img[digits[i]]
                if tables[offset[r] + src] != tables[offset[r] + dst]:
                    return False
                carry = True
                i = k - 1
                while carry and i >= 0:
                    if i == p:
                        i -= 1
                        continue
                    digits[i] += 1
                    if (i < p and digits[i] < m) or (i > p and digits[i] <= m):
                        carry = False
                    else:
                        digits[i] = 0
                        i -= 1
                if carry:
                    break
    return True


def find_extension(int32_t[:, ::1] C, uint64_t[:, ::1] rowmask, uint64_t[:, ::1] colmask,
                   uint64_t[::1] init_dom, uint64_t[::1] forced,
                   int32_t[::1] arity, int64_t[::1] offset, cnp.uint8_t[::1] tables,
                   int64_t node_limit):
    """DFS for a colour-preserving bijection respecting the exact tables.

    Points are assigned in order 0..N-1, candidates lowest first, restricted
    to ``forced[m]``. Returns (images or None, nodes, exhausted_flag).
    """
    cdef int N = C.shape[0]
    cdef int nrel = arity.shape[0]
    cdef int m, u, y, free_count
    cdef uint64_t one = 1, all_dom, ybit
    cdef int64_t nodes = 0
    cdef bint ok, exhausted = False, found = False
    cdef uint64_t *doms = <uint64_t *> malloc((N + 1) * N * sizeof(uint64_t))
    cdef uint64_t *cand = <uint64_t *> malloc((N + 1) * sizeof(uint64_t))
    cdef int32_t *img = <int32_t *> malloc(N * sizeof(int32_t))
    cdef int32_t *digits = <int32_t *> malloc(8 * sizeof(int32_t))
    cdef const int32_t *ar = &arity[0] if nrel > 0 else NULL
    cdef const int64_t *off = &offset[0] if nrel > 0 else NULL
    cdef const uint8_t *tab = &tables[0] if tables.shape[0] > 0 else NULL
    try:
        with nogil:
            for u in range(N):
                doms[u] = init_dom[u]
            m = 0
            cand[0] = doms[0] & forced[0]
            while True:
                if m == N:
                    found = True
                    break
                if cand[m] == 0:
                    m -= 1
                    if m < 0:
                        break
                    continue
                y = __builtin_ctzll(cand[m])
                ybit = one << y
                cand[m] &= ~ybit
                nodes += 1
                if nodes > node_limit:
                    exhausted = True
                    break
                img[m] = y
                if nrel > 0 and not _exact_ok(m, img, nrel, ar, off, tab, N, digits):
                    continue
                ok = True
                all_dom = 0
                for u in range(m + 1, N):
                    doms[(m + 1) * N + u] = (doms[m * N + u] & rowmask[y, C[m, u]]
                                             & colmask[y, C[u, m]] & ~ybit)
                    if doms[(m + 1) * N + u] == 0:
                        ok = False
                        break
                    all_dom |= doms[(m + 1) * N + u]
                if not ok:
                    continue
                free_count = N - m - 1
                if __builtin_popcountll(all_dom) < free_count:
                    continue
                m += 1
                if m < N:
                    cand[m] = doms[m * N + m] & forced[m]
        if not found:
            return None, nodes, exhausted
        out = np.empty(N, dtype=np.int32)
        for u in range(N):
            out[u] = img[u]
        return out, nodes, exhausted
    finally:
        free(doms)
        free(cand)
        free(img)
        free(digits)
