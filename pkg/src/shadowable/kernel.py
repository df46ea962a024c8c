"""Kernel selection.

The compiled extension is preferred; ``SHADOWABLE_PURE_PYTHON=1`` forces the
fallback. Spaces wider than the compiled kernel's bitset always use the fallback.
"""

import os

from . import _pykernel

try:
    if os.environ.get("SHADOWABLE_PURE_PYTHON"):
        raise ImportError("pure-python kernel requested")
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _pykernel.BACKEND


def closure(n, balls, adj_ptr, adj_idx, fwd, cap, backend=None):
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        if n <= _compiled.MAX_POINTS:
            return _compiled.closure(n, balls, adj_ptr, adj_idx, fwd, cap)
    return _pykernel.closure(n, balls, adj_ptr, adj_idx, fwd, cap)


def available_backends():
    return ["python"] + (["cython"] if _compiled is not None else [])
