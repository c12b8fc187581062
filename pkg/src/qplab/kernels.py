"""Backend selection for the search kernels.

The compiled Cython core is used when it imports; otherwise (or when the
environment variable ``QPLAB_PURE_PYTHON`` is set to a non-empty value other
than ``0``) the pure-Python twin in :mod:`qplab._kernels_py` takes over.  Both
backends return identical results.
"""
import os

from . import _kernels_py

_force_python = os.environ.get("QPLAB_PURE_PYTHON", "") not in ("", "0")

try:
    if _force_python:
        raise ImportError("pure Python backend requested")
    from . import _kernels as _backend
except ImportError:
    _backend = _kernels_py

BACKEND = _backend.BACKEND
max_clique = _backend.max_clique
first_template_match = _backend.first_template_match
min_bisection = _backend.min_bisection
max_k_free_subset = _backend.max_k_free_subset

__all__ = ["BACKEND", "max_clique", "first_template_match", "min_bisection",
           "max_k_free_subset", "backends"]


def backends():
    """All importable backend modules, pure Python first."""
    mods = [_kernels_py]
    try:
        from . import _kernels
        mods.append(_kernels)
    except ImportError:
        pass
    return mods
