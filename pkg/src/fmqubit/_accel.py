"""Optional numba acceleration.

Hot kernels are written once in plain scalar Python. When numba is
importable a compiled twin is built with :func:`compiled`; the dispatchers in
each module call the compiled twin unless ``FMQUBIT_DISABLE_NUMBA=1`` was set
when this module was imported, in which case they fall back to the
vectorized numpy path (or the uncompiled scalar kernel where no vectorized
form exists).
"""

from __future__ import annotations

import os
from typing import Callable, Optional

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

HAS_NUMBA = _numba is not None
_DISABLED = os.environ.get("FMQUBIT_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")
USE_NUMBA = HAS_NUMBA and not _DISABLED


def compiled(func: Callable) -> Optional[Callable]:
    """Return an ``njit`` build of ``func`` or ``None`` without numba.

    Compilation is lazy (first call), so importing never pays for it.
    """
    if not HAS_NUMBA:
        return None
    return _numba.njit(cache=True, nogil=True)(func)


def jitable(func: Callable) -> Callable:
    """Mark a scalar helper as callable from compiled kernels.

    The function itself stays plain Python, so uncompiled kernels that call
    it remain pure Python as well.
    """
    if HAS_NUMBA:
        from numba.extending import register_jitable

        return register_jitable(func)
    return func


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
