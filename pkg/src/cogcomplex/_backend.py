"""Select the kernel implementation at import time.

The compiled extension is used when it was built; otherwise the numpy
fallback. Setting ``COGCOMPLEX_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("COGCOMPLEX_PURE_PYTHON", "") not in ("", "0"):
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"

MODE_LINEAR = 0
MODE_DOUBLE = 1
