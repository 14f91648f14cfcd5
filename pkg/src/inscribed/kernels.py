"""Backend selection for the integer pivoting kernels.

The compiled module is used when it imports; setting ``INSCRIBED_PURE_PYTHON=1``
forces the pure Python fallback.
"""
import os

from . import _pykernels

if os.environ.get("INSCRIBED_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"
pivot = _impl.pivot
rref = _impl.rref
dots = _impl.dots
