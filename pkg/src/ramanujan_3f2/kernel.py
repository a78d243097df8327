"""Backend selection for the series summation kernel.

The compiled ``_series_c`` module is used when importable; set
``RAMANUJAN_3F2_PURE_PYTHON=1`` to force the pure-Python fallback.
"""

import os

from . import _series_py

RUNNING = _series_py.RUNNING
TERMINATED = _series_py.TERMINATED
TOLERANCE = _series_py.TOLERANCE

python_advance = _series_py.advance

try:
    from ._series_c import advance as compiled_advance
except ImportError:  # pragma: no cover - depends on the build
    compiled_advance = None

if compiled_advance is not None and os.environ.get("RAMANUJAN_3F2_PURE_PYTHON") != "1":
    advance = compiled_advance
    BACKEND = "cython"
else:
    advance = python_advance
    BACKEND = "python"

__all__ = ["BACKEND", "RUNNING", "TERMINATED", "TOLERANCE", "advance", "compiled_advance", "python_advance"]
