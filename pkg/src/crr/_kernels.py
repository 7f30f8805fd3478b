"""Select the recurrence kernel backend at import time.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
numpy implementation in ``_pykernels`` takes over. Setting the environment
variable ``CRR_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

_NAMES = ("eval_scaled", "sign_values", "bisect_roots", "sturm_counts", "sturm_roots")

if os.environ.get("CRR_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

eval_scaled = _impl.eval_scaled
sign_values = _impl.sign_values
bisect_roots = _impl.bisect_roots
sturm_counts = _impl.sturm_counts
sturm_roots = _impl.sturm_roots


def backend_module(name):
    """Return the kernel module for ``"python"`` or ``"cython"``."""
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
