"""Kernel selection: the compiled core when built, else the pure fallback.

Set ``F2REDUCTS_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _fallback

BACKEND = "python"
_impl = _fallback
if os.environ.get("F2REDUCTS_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback


def backend():
    return BACKEND


def orbit_labels(gens: np.ndarray, k: int, mask: np.ndarray, workers: int = 1, impl=None):
    """(labels, full orbit sizes) for all N^k tuple codes.

    With ``workers > 1`` the image table is built in parallel chunks and the
    orbits are read off as connected components; the labelling is canonical,
    so the answer does not depend on the route taken.
    """
    impl = impl or _impl
    gens = np.ascontiguousarray(gens, dtype=np.int32)
    mask = np.ascontiguousarray(mask, dtype=np.uint8)
    if workers <= 1:
        return impl.orbit_labels(gens, k, mask)
    M = mask.shape[0]
    bounds = np.linspace(0, M, workers + 1).astype(np.int64)
    with ThreadPoolExecutor(workers) as ex:
        parts = list(ex.map(lambda i: _fallback.image_codes(gens, k, bounds[i], bounds[i + 1]),
                            range(workers)))
    return _fallback.labels_from_images(np.concatenate(parts, axis=1), mask)


def find_extension(C, rowmask, colmask, init_dom, forced, arity, offset, tables,
                   node_limit: int, impl=None):
    impl = impl or _impl
    return impl.find_extension(
        np.ascontiguousarray(C, dtype=np.int32),
        np.ascontiguousarray(rowmask, dtype=np.uint64),
        np.ascontiguousarray(colmask, dtype=np.uint64),
        np.ascontiguousarray(init_dom, dtype=np.uint64),
        np.ascontiguousarray(forced, dtype=np.uint64),
        np.ascontiguousarray(arity, dtype=np.int32),
        np.ascontiguousarray(offset, dtype=np.int64),
        np.ascontiguousarray(tables, dtype=np.uint8),
        int(node_limit),
    )
