"""Kernel backend selection: compiled extension if available, numpy otherwise.

Set WALKFP_PURE=1 to force the pure numpy fallback (used by the benchmark and
by the backend-equivalence tests).
"""

from __future__ import annotations

import os

from . import _purekern

if os.environ.get("WALKFP_PURE") == "1":
    _backend = _purekern
else:
    try:
        from . import _fastkern as _backend  # type: ignore[no-redef]
    except ImportError:
        _backend = _purekern

IS_COMPILED: bool = _backend.IS_COMPILED
row_magnitudes = _backend.row_magnitudes
accumulate_bins = _backend.accumulate_bins

pure = _purekern


def get_backend(name: str | None = None):
    """Return a kernel module by name ('compiled', 'pure', or None for active)."""
    if name is None:
        return _backend
    if name == "pure":
        return _purekern
    if name == "compiled":
        from . import _fastkern  # raises ImportError if not built

        return _fastkern
    raise ValueError(f"unknown backend {name!r}")
