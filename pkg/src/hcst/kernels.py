"""Kernel selection: compiled extension when available, numpy fallback otherwise.

Set HCST_PURE_PYTHON=1 to force the fallback (used by the kernel benchmark
and by tests that exercise both implementations).
"""

from __future__ import annotations

import os

from . import _kernel_py


def available_kernels() -> dict:
    """Name -> relax_layers callable for every importable kernel."""
    kernels = {"python": _kernel_py.relax_layers}
    try:
        from . import _kernel

        kernels["compiled"] = _kernel.relax_layers
    except ImportError:
        pass
    return kernels


def _select():
    kernels = available_kernels()
    if os.environ.get("HCST_PURE_PYTHON"):
        return kernels["python"], "python"
    if "compiled" in kernels:
        return kernels["compiled"], "compiled"
    return kernels["python"], "python"


relax_layers, ACTIVE_KERNEL = _select()

INF = _kernel_py.INF
