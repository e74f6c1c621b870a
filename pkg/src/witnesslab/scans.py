"""Backend selection for the scan kernels.

Prefers the compiled extension (_fastscan) and falls back to the pure
Python twins (_scan_py).  Set WITNESSLAB_PURE=1 to force the fallback,
e.g. for benchmarking or debugging.
"""

from __future__ import annotations

import os

from . import _scan_py

if os.environ.get("WITNESSLAB_PURE"):
    _impl = _scan_py
    BACKEND = "python"
else:
    try:
        from . import _fastscan as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _scan_py
        BACKEND = "python"

exists_square_sum = _impl.exists_square_sum
first_tractable_violation = _impl.first_tractable_violation
