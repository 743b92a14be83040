"""Kernel backend selection.

The hot kernels (Schur iteration, pivoted QR, quasi-triangular square
root) exist twice: a Cython extension (``reallog._kernels_c``) and a pure
numpy lane (``reallog._kernels_pure``).  The compiled lane is preferred
when importable; set ``REALLOG_BACKEND=pure`` or ``=compiled`` to force a
lane, and ``use()`` to switch at runtime (used by the parity tests and the
benchmark).
"""

import os

from . import _kernels_pure

try:
    from . import _kernels_c
except ImportError:
    _kernels_c = None

_active = None


def available():
    """Names of the importable kernel lanes."""
    names = ["pure"]
    if _kernels_c is not None:
        names.insert(0, "compiled")
    return names


def get(name):
    """Kernel module for an explicit lane name."""
    if name == "pure":
        return _kernels_pure
    if name == "compiled":
        if _kernels_c is None:
            raise ImportError("compiled kernel lane is not built")
        return _kernels_c
    raise ValueError(f"unknown backend {name!r} (expected 'pure' or 'compiled')")


def use(name):
    """Switch the active lane; returns the previously active module."""
    global _active
    previous = _active
    _active = get(name)
    return previous


def active():
    """Currently selected kernel module."""
    return _active


def active_name():
    return _active.BACKEND_NAME


_env = os.environ.get("REALLOG_BACKEND", "").strip().lower()
if _env:
    _active = get(_env)
elif _kernels_c is not None:
    _active = _kernels_c
else:
    _active = _kernels_pure
