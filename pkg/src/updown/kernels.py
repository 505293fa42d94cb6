"""Import-time selection between the compiled and pure-Python kernels.

Set ``UPDOWN_PURE_PYTHON=1`` to force the fallback.  The compiled kernels
use 64-bit masks and 64-bit scores; calls that could exceed either are routed
to the fallback, so results never depend on the backend.
"""

import os

from updown import _kernels_py

try:
    if os.environ.get("UPDOWN_PURE_PYTHON"):
        raise ImportError("pure-Python kernels forced")
    from updown import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"

_MASK_LIMIT = 1 << 64
_SCORE_LIMIT = 1 << 62


def _fits(*masks):
    return all(0 <= x < _MASK_LIMIT for x in masks)


def subset_sweep(masks_a, masks_b, full, backend=None):
    impl = _pick(backend)
    if impl is _compiled and not (_fits(full, *masks_a, *masks_b)):
        impl = _kernels_py
    return impl.subset_sweep(list(masks_a), list(masks_b), full)


def extension_profile(a_mask, d_mask, m, k, backend=None):
    impl = _pick(backend)
    if impl is _compiled and (m > 63 or not _fits(a_mask, d_mask)):
        impl = _kernels_py
    return impl.extension_profile(a_mask, d_mask, m, k)


def pav_best(approve, disapprove, m, k, weights, backend=None):
    impl = _pick(backend)
    if impl is _compiled and (
            m > 62 or not _fits(*approve, *disapprove)
            or max(weights) * max(len(approve), 1) >= _SCORE_LIMIT):
        impl = _kernels_py
    return impl.pav_best(list(approve), list(disapprove), m, k, list(weights))


def _pick(backend):
    if backend is None:
        return _compiled or _kernels_py
    if backend == "python":
        return _kernels_py
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled
    raise ValueError(f"unknown backend {backend!r}")
