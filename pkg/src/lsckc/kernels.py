"""Kernel backend selection: compiled extension with pure-Python fallback.

The hot inner loop of the solver is the enhanced-swap scan; it is
implemented twice with identical semantics, in ``lsckc._speedups``
(Cython) and ``lsckc._pykernels`` (pure Python). The compiled module is
preferred when it imported cleanly; set ``LSCKC_PURE_PYTHON=1`` in the
environment (before import) or call :func:`set_backend` to force the
fallback. ``benchmarks/backend_bench.py`` compares the two.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    from . import _speedups
except ImportError:  # extension not built; pure Python still works
    _speedups = None

_impl = _pykernels
if _speedups is not None and not os.environ.get("LSCKC_PURE_PYTHON"):
    _impl = _speedups


def backend() -> str:
    """Name of the active backend: "compiled" or "python"."""
    return _impl.BACKEND


def have_compiled() -> bool:
    return _speedups is not None


def set_backend(name: str) -> None:
    """Switch backends at runtime ("compiled" | "python")."""
    global _impl
    if name == "python":
        _impl = _pykernels
    elif name == "compiled":
        if _speedups is None:
            raise RuntimeError("compiled kernels are not available")
        _impl = _speedups
    else:
        raise ValueError(f"unknown backend {name!r}")


def find_swap(*args):
    return _impl.find_swap(*args)


def dms_saturated(*args):
    return _impl.dms_saturated(*args)
