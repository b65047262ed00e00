"""Pure-numpy fallback for the hot evaluation kernels.

Same signatures as the compiled extension ``curvdeg._kernels``; used when the
extension is not built.  Both backends must agree to machine precision
(checked in tests/test_kernels.py).
"""

import numpy as np


def eval_poly(powers, coeffs, pts):
    """Evaluate a sparse multivariate polynomial at many points.

    powers : (m, k) integer exponent rows, coeffs : (m,), pts : (n, k).
    Returns the (n,) vector sum_j coeffs[j] * prod_d pts[:, d]**powers[j, d].
    """
    pts = np.asarray(pts, dtype=np.float64)
    out = np.zeros(pts.shape[0])
    for p, c in zip(powers, coeffs):
        term = np.full(pts.shape[0], c)
        for d, e in enumerate(p):
            if e == 1:
                term = term * pts[:, d]
            elif e > 1:
                term = term * pts[:, d] ** int(e)
        out += term
    return out


def chart_points(basis, x):
    """Map stereographic chart coordinates to ambient sphere points.

    basis : (4, 4) with rows e1, e2, e3, theta; x : (n, 3) chart coordinates.
    Returns (n, 4) points (2*sum x_i e_i + (1-|x|^2) theta) / (1+|x|^2).
    """
    x = np.asarray(x, dtype=np.float64)
    n2 = np.einsum("ij,ij->i", x, x)
    num = 2.0 * x @ basis[:3] + np.outer(1.0 - n2, basis[3])
    return num / (1.0 + n2)[:, None]
