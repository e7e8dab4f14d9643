"""Backend selection for the breakpoint scan.

The compiled ``chevron._scan`` extension is used when it was built; otherwise
the pure-Python kernel is used.  Setting ``CHEVRON_PURE_PYTHON=1`` forces the
fallback.
"""
from __future__ import annotations

import os

import numpy as np

from chevron import _scan_py

try:
    from chevron import _scan as _compiled
except ImportError:  # extension not built
    _compiled = None

HAVE_COMPILED = _compiled is not None
BACKEND = "cython" if HAVE_COMPILED and not os.environ.get("CHEVRON_PURE_PYTHON") else "python"


def scan_breaks(lx, ly, min_points: int, backend: str | None = None) -> np.ndarray:
    """Two-segment total SSE for each split of the (lg eta, lg phi) samples.

    Entry ``i`` is the split whose first segment has ``min_points + i`` points.
    """
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        return _compiled.scan_breaks(lx, ly, int(min_points))
    if backend == "python":
        return np.asarray(_scan_py.scan_breaks(lx, ly, int(min_points)), dtype=float)
    raise ValueError(f"unknown backend {backend!r}")
