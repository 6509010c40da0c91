"""Hot kernels behind a backend switch.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the numpy ``_pykernels`` module is.  Setting ``DENSECSP_PURE=1`` forces the
numpy backend.  Both produce identical results.
"""
import math
import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if _ckernels is not None and not os.environ.get("DENSECSP_PURE"):
    _impl = _ckernels
else:
    _impl = _pykernels

BACKEND = _impl.NAME
_INT64_SAFE = 1 << 62


def available_backends():
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out


def _backend(name):
    if name is None:
        return _impl
    return available_backends()[name]


def greedy_weights(S):
    """Integer weights ``L / |S_b|`` with ``L`` the lcm of the nonzero sizes."""
    sizes = S.sum(axis=1)
    L = 1
    for s in set(int(x) for x in sizes if x):
        L = L * s // math.gcd(L, s)
    w = [L // int(s) if s else 0 for s in sizes]
    return w, L


def greedy_level1(T, S, backend=None):
    T = np.ascontiguousarray(T, dtype=np.uint8)
    S = np.ascontiguousarray(S, dtype=np.uint8)
    w, L = greedy_weights(S)
    na, nb, q, _ = T.shape
    if L * q * max(nb, 1) < _INT64_SAFE:
        return _backend(backend).greedy_level1(T, S, np.asarray(w, dtype=np.int64))
    # exact big-integer path; only the numpy backend supports it
    return _pykernels.greedy_level1(T, S, np.asarray(w, dtype=object))


def brute_force(tables, edges, allowed, backend=None):
    """Best assignment over per-vertex allowed labels (``allowed`` is ``(n, q)`` bool)."""
    allowed = np.asarray(allowed, dtype=bool)
    n, q = allowed.shape
    sizes = allowed.sum(axis=1).astype(np.int64)
    domains = np.zeros((n, q), dtype=np.int64)
    for v in range(n):
        labs = np.flatnonzero(allowed[v])
        domains[v, :len(labs)] = labs
    if (sizes == 0).any():
        return -1, np.zeros(n, dtype=np.int64)
    edges = np.asarray(edges, dtype=np.int64)
    eu = np.ascontiguousarray(edges[:, 0])
    ev = np.ascontiguousarray(edges[:, 1])
    return _backend(backend).brute_force(
        np.ascontiguousarray(tables, dtype=np.uint8), eu, ev, domains, sizes)


def square_tables(P, adj, h, backend=None):
    return _backend(backend).square_tables(
        np.ascontiguousarray(P, dtype=np.int32),
        np.ascontiguousarray(adj, dtype=np.uint8), int(h))
