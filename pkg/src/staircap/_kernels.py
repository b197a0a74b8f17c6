"""Integer kernels behind capacity-sequence generation.

The exact layers reduce every large capacity question about rational
ellipsoids to one primitive: the first ``count`` values of the sorted
multiset ``{m*p + n*q : m, n >= 0}`` for positive integers p, q.  That
enumeration is the only hot loop in the package, so it carries a
numba-compiled kernel with a pure-numpy fallback.

Backend selection: numba when importable, unless the environment flag
``STAIRCAP_NO_NUMBA`` is set (any nonempty value), in which case the
numpy path is used.  Both paths are exact int64 arithmetic and are
asserted bit-identical in the test suite; ``benchmarks/bench_kernels.py``
times them against each other.
"""

from __future__ import annotations

import os
from math import isqrt

import numpy as np

__all__ = ["sorted_pair_sums", "count_pairs_upto", "active_backend",
           "pair_sums_numpy", "pair_sums_numba", "HAVE_NUMBA"]

_INT64_CAP = 2**62


def _pair_sums_impl(p, q, bound):
    # all values m*p + n*q <= bound, sorted; numba-compilable
    nmax = bound // q
    total = 0
    for n in range(nmax + 1):
        total += (bound - n * q) // p + 1
    out = np.empty(total, dtype=np.int64)
    idx = 0
    for n in range(nmax + 1):
        base = n * q
        mmax = (bound - base) // p
        for m in range(mmax + 1):
            out[idx] = base + m * p
            idx += 1
    return np.sort(out)


def pair_sums_numpy(p: int, q: int, bound: int) -> np.ndarray:
    """All values m*p + n*q <= bound as a sorted int64 array (numpy path)."""
    blocks = [
        np.arange(n * q, bound + 1, p, dtype=np.int64)
        for n in range(bound // q + 1)
    ]
    return np.sort(np.concatenate(blocks))


try:  # the compiled kernel is optional; numpy path is always present
    from numba import njit

    pair_sums_numba = njit(cache=True)(_pair_sums_impl)
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    pair_sums_numba = None
    HAVE_NUMBA = False

_FORCE_NUMPY = bool(os.environ.get("STAIRCAP_NO_NUMBA"))
_BACKENDS = {"numpy": pair_sums_numpy}
if HAVE_NUMBA:
    _BACKENDS["numba"] = pair_sums_numba
_ACTIVE = "numpy" if (_FORCE_NUMPY or not HAVE_NUMBA) else "numba"


def active_backend() -> str:
    """Name of the backend selected at import time ('numba' or 'numpy')."""
    return _ACTIVE


def count_pairs_upto(p: int, q: int, bound: int) -> int:
    """#{(m, n) >= 0 : m*p + n*q <= bound}, in python ints."""
    if bound < 0:
        return 0
    return sum((bound - n * q) // p + 1 for n in range(bound // q + 1))


def sorted_pair_sums(p: int, q: int, count: int, backend: str | None = None) -> np.ndarray:
    """First ``count`` values of the sorted multiset {m*p + n*q}.

    Exact: grows an integer bound until at least ``count`` lattice values
    fall below it (values beyond the bound are strictly larger than any
    kept one), then enumerates and sorts.
    """
    if p <= 0 or q <= 0:
        raise ValueError("generators must be positive integers")
    if count <= 0:
        return np.empty(0, dtype=np.int64)
    fn = _BACKENDS[backend] if backend else _BACKENDS[_ACTIVE]
    if fn is None:
        raise RuntimeError(f"backend {backend!r} is not available")
    bound = isqrt(2 * count * p * q) + p + q
    while count_pairs_upto(p, q, bound) < count:
        bound += bound // 2 + p + q
    if bound >= _INT64_CAP:
        raise OverflowError("requested sequence exceeds the int64 kernel range")
    return fn(p, q, bound)[:count]
