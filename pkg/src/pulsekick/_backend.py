"""Selects the time-stepping kernel implementation at import.

The compiled Cython module is preferred; the pure-Python module is the
drop-in fallback. Set PULSEKICK_PURE_PYTHON=1 to force the fallback (used by
the benchmark and the backend-agreement tests).
"""

from __future__ import annotations

import os

if os.environ.get("PULSEKICK_PURE_PYTHON") == "1":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

#: "compiled" or "python"
BACKEND = kernels.BACKEND_NAME


def get_kernels():
    """Kernel module in use (compiled extension or pure-Python fallback)."""
    return kernels
