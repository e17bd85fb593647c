"""Backend selection for the hot loops.

The compiled extension ``nccc._kernels`` is used when it imports; otherwise
the NumPy versions in ``nccc._kernels_py`` are used. Setting
``NCCC_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("NCCC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        pass
    else:
        _impl = _compiled
        BACKEND = "compiled"


def get_backend(name: str | None = None):
    """Return the kernel module for ``name`` ("compiled"/"python"), default active one."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from . import _kernels
        return _kernels
    raise ValueError(f"unknown backend {name!r}")


def jacobi_eigenvalues(a, rel_tol=1e-12, max_sweeps=100, backend=None):
    a = np.ascontiguousarray(a, dtype=np.float64)
    return get_backend(backend).jacobi_eigenvalues(a, float(rel_tol), int(max_sweeps))


def associativity_violation(op, backend=None):
    return get_backend(backend).associativity_violation(np.ascontiguousarray(op, dtype=np.intc))


def class_pairs_all_noncommuting(op, members, offsets, backend=None):
    return get_backend(backend).class_pairs_all_noncommuting(
        np.ascontiguousarray(op, dtype=np.intc),
        np.ascontiguousarray(members, dtype=np.intc),
        np.ascontiguousarray(offsets, dtype=np.intc),
    )


def class_pairs_any_commuting(op, members, offsets, backend=None):
    return get_backend(backend).class_pairs_any_commuting(
        np.ascontiguousarray(op, dtype=np.intc),
        np.ascontiguousarray(members, dtype=np.intc),
        np.ascontiguousarray(offsets, dtype=np.intc),
    )
