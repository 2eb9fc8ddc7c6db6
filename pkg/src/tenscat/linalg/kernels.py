"""Kernel selection: compiled extension if it was built, else pure Python.

``use("python")`` / ``use("compiled")`` switch at runtime; the benchmark
and the cross-check tests rely on that.
"""
from __future__ import annotations

from . import _pykernels

try:  # pragma: no cover - depends on the build
    from . import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

_MODP_LIMIT = 1 << 31

_active = _ckernels if _ckernels is not None else _pykernels


def available() -> list[str]:
    return ["python"] + (["compiled"] if _ckernels is not None else [])


def active() -> str:
    return "compiled" if _active is _ckernels and _ckernels is not None else "python"


def use(name: str) -> None:
    global _active
    if name == "python":
        _active = _pykernels
    elif name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _ckernels
    else:
        raise ValueError(f"unknown kernel set {name!r}")


def rref_int(rows, ncols):
    return _active.rref_int(rows, ncols)


def rref_modp(rows, ncols, p):
    if p >= _MODP_LIMIT:
        return _pykernels.rref_modp(rows, ncols, p)
    return _active.rref_modp(rows, ncols, p)


def smith_normal_form(a, nrows, ncols):
    return _active.smith_normal_form(a, nrows, ncols)
