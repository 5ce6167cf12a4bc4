"""Backend selection for the spectral-sum kernels.

The compiled extension is used when it imports; otherwise the numpy
fallback is used. Setting ``QSTNET_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("QSTNET_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

fidelity_at = _impl.fidelity_at
fidelity_grid = _impl.fidelity_grid
local_maxima = _impl.local_maxima
golden_max = _impl.golden_max

__all__ = ["BACKEND", "fidelity_at", "fidelity_grid", "local_maxima", "golden_max"]
