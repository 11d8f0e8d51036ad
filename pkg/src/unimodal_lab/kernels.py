"""Backend selector for the grid kernels.

Prefers the compiled extension and falls back to the NumPy lane when it
is missing. Set UNIMODAL_LAB_PURE=1 to force the fallback; both lanes
share grid, guard, and tie-breaking semantics, so results agree to
floating-point noise.
"""

from __future__ import annotations

import os

from . import _kernels_py

_impl = _kernels_py
if os.environ.get("UNIMODAL_LAB_PURE", "") in ("", "0"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        pass


def backend() -> str:
    """Name of the active lane: "compiled" or "pure"."""
    return "pure" if _impl is _kernels_py else "compiled"


grid_max_threshold = _impl.grid_max_threshold
grid_min_margin = _impl.grid_min_margin
count_nonneg_threshold = _impl.count_nonneg_threshold
grid_max_limit_shape = _impl.grid_max_limit_shape
