"""Select the compiled kernel backend at import, falling back to numpy."""

import numpy as np

try:
    from . import _kernels as _impl

    BACKEND = "cython"
except ImportError:  # extension not built; pure-python install
    from . import _kernels_py as _impl

    BACKEND = "python"

from . import _kernels_py


def eval_poly(powers, coeffs, pts):
    powers = np.ascontiguousarray(powers, dtype=np.int64)
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    return _impl.eval_poly(powers, coeffs, pts)


def chart_points(basis, x):
    basis = np.ascontiguousarray(basis, dtype=np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    return _impl.chart_points(basis, x)


def available_backends():
    """Backends importable in this environment, keyed by name."""
    out = {"python": _kernels_py}
    if BACKEND == "cython":
        out["cython"] = _impl
    return out
