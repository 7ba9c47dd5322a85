"""Kernel backend selection.

The compiled kernels are used when the extension is importable; set
``PIVOTWALK_BACKEND=python`` to force the pure-Python fallback.
"""

from __future__ import annotations

import importlib
import os
from types import ModuleType

from . import _pykernels


def _load(name: str) -> ModuleType:
    if name == "python":
        return _pykernels
    if name == "cython":
        return importlib.import_module("pivotwalk._kernels")
    raise ValueError(f"unknown backend {name!r} (expected 'cython' or 'python')")


def available() -> list[str]:
    names = ["python"]
    try:
        _load("cython")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


def get(name: str | None = None) -> ModuleType:
    """Kernel module for ``name``, or the active default."""
    if name is None:
        return kernels
    return _load(name)


_forced = os.environ.get("PIVOTWALK_BACKEND", "").strip().lower()
if _forced:
    kernels = _load(_forced)
    NAME = _forced
else:
    try:
        kernels = _load("cython")
        NAME = "cython"
    except ImportError:
        kernels = _pykernels
        NAME = "python"
