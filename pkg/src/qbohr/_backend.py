"""Selects the kernel implementation at import time.

The compiled extension ``qbohr._ckernels`` is preferred.  Setting the
environment variable ``QBOHR_PURE_PYTHON=1`` forces the numpy fallback.
"""

import os

from . import _pykernels

if os.environ.get("QBOHR_PURE_PYTHON", "") not in ("", "0"):
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels
        BACKEND = "cython"
    except ImportError:  # extension not built
        kernels = _pykernels
        BACKEND = "python"

star_convolve = kernels.star_convolve
horner = kernels.horner
real_inverse = kernels.real_inverse
