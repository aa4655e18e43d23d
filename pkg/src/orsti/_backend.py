"""Kernel selection: the compiled extension when importable, otherwise the
pure-Python twin.  Set ``ORSTI_PURE_PYTHON=1`` to force the fallback."""

import os

if os.environ.get("ORSTI_PURE_PYTHON"):
    from . import _pykernels as kernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:
        from . import _pykernels as kernels

BACKEND = kernels.BACKEND
