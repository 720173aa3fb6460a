"""Kernel backend selection.

The compiled extension is preferred; set ``NGCLUSTER_PURE_PYTHON=1`` to force
the pure-Python fallback.
"""
from __future__ import annotations

import os
from types import ModuleType

from ngcluster import _pykernels


def _load_compiled() -> ModuleType | None:
    if os.environ.get("NGCLUSTER_PURE_PYTHON", "") not in ("", "0"):
        return None
    try:
        from ngcluster import _kernels
    except ImportError:
        return None
    return _kernels


_compiled = _load_compiled()
BACKEND = "compiled" if _compiled is not None else "python"
_active = _compiled if _compiled is not None else _pykernels


def get_backend(name: str | None = None) -> ModuleType:
    """Return the kernel module for ``name`` ("compiled", "python" or None = active)."""
    if name is None:
        return _active
    if name == "python":
        return _pykernels
    if name == "compiled":
        if _compiled is None:
            from ngcluster import _kernels  # raises ImportError with the real cause

            return _kernels
        return _compiled
    raise ValueError(f"unknown kernel backend {name!r}")


def compiled_available() -> bool:
    return _compiled is not None
