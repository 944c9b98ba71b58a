"""JIT selection for the numeric kernels.

Set ``BIPWHC_BACKEND=python`` to run every kernel as plain Python over numpy
arrays (slow, but needs no compiler). The default ``numba`` backend compiles
the same source with ``numba.njit``; if numba cannot be imported we fall back
to Python with a warning.
"""
from __future__ import annotations

import logging
import os
import warnings

BACKEND_ENV = "BIPWHC_BACKEND"

_requested = os.environ.get(BACKEND_ENV, "numba").strip().lower()
if _requested not in ("numba", "python"):
    raise ValueError(f"{BACKEND_ENV} must be 'numba' or 'python', got {_requested!r}")

if _requested == "numba":
    try:
        import numba

        logging.getLogger("numba").setLevel(logging.WARNING)
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        warnings.warn("numba is not importable; kernels run as plain Python", RuntimeWarning)
        BACKEND = "python"
else:
    BACKEND = "python"


def jit(func):
    """Compile ``func`` with numba when the numba backend is active.

    The original function stays reachable as ``.py_func`` on both backends so
    tests and the benchmark can drive the interpreted path directly.
    """
    if BACKEND == "numba":
        return numba.njit(cache=True, nogil=True)(func)
    func.py_func = func
    return func
