"""Kernel backend selection.

The compiled kernels (leibalg._speedups, built from Cython) are used when
importable; otherwise the pure Python twins take over.  Set
LEIBALG_PURE_PYTHON=1 to force the fallback, e.g. for benchmarking.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("LEIBALG_PURE_PYTHON"):
    kernels = _kernels_py
else:
    try:
        from . import _speedups as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.BACKEND_NAME


def available_backends():
    """Name -> module for every importable kernel backend."""
    found = {_kernels_py.BACKEND_NAME: _kernels_py}
    try:
        from . import _speedups

        found[_speedups.BACKEND_NAME] = _speedups
    except ImportError:
        pass
    return found


def set_backend(name):
    """Swap the active kernels (used by the benchmark and backend tests)."""
    global kernels, BACKEND
    kernels = available_backends()[name]
    BACKEND = name
