"""Backend selection for the arithmetic kernels.

The compiled extension ``nondeg._kernels`` is used when it was built; setting
``NONDEG_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _pykernels

if os.environ.get("NONDEG_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND
axpy = _impl.axpy
mul_term = _impl.mul_term
mul = _impl.mul
DivisorIndex = _impl.DivisorIndex

__all__ = ["BACKEND", "axpy", "mul_term", "mul", "DivisorIndex"]
