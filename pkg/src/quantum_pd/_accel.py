"""Optional numba acceleration.

Set ``QPD_DISABLE_NUMBA=1`` to run every kernel as plain Python/numpy.
The flag is read once at import time.
"""
import os

_FALSY = {"", "0", "false", "no", "off"}

DISABLED = os.environ.get("QPD_DISABLE_NUMBA", "0").strip().lower() not in _FALSY

try:
    if DISABLED:
        raise ImportError
    from numba import njit as _njit
    HAS_NUMBA = True
except ImportError:
    _njit = None
    HAS_NUMBA = False


def jit(fn):
    """Compile ``fn`` with numba when available, else return it unchanged."""
    if not HAS_NUMBA:
        return fn
    return _njit(cache=True, nogil=True)(fn)
