"""Kernel backend selection.

The compiled kernel is used when it was built; otherwise the pure-Python one.
``RAPIDSAT_BACKEND=python`` (or ``cython``) forces a choice.
"""

import os

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

_KERNELS = {"python": _pykernel.Kernel}
if _ckernel is not None:
    _KERNELS["cython"] = _ckernel.Kernel


def available_backends():
    return sorted(_KERNELS)


def resolve(name=None) -> str:
    name = (name or os.environ.get("RAPIDSAT_BACKEND") or "auto").lower()
    if name == "auto":
        return "cython" if "cython" in _KERNELS else "python"
    if name not in ("python", "cython"):
        raise ValueError(f"unknown backend {name!r}; expected auto, python or cython")
    if name not in _KERNELS:
        raise ImportError("compiled kernel not built; reinstall with Cython available")
    return name


def kernel_class(name=None):
    return _KERNELS[resolve(name)]


DEFAULT_BACKEND = resolve()
