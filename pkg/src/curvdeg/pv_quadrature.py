"""Cauchy principal-value and improper integrals over R^3 with power weights.

Strategy: integrate each spherical shell first (the symmetric limit kills all
odd-order terms exactly, since the angular node set is antipodally
symmetric), then integrate the shell averages radially.  The radial line is
split three ways:

* [0, r_switch]: the polynomial part of the integrand is replaced by its
  high-order Taylor remainder; the shell average of a monomial is a closed
  form, so this piece integrates analytically with no cancellation.
* [r_switch, 1]: adaptive bisection of direct shell averages.
* [1, inf): substitution r -> 1/r and adaptive bisection on (0, 1].

Bump perturbations are handled directly (their jets vanish at valid base
points), with an extra adaptive piece on [0, r_switch] when bumps exist.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .backend import chart_points
from .errors import NonIntegrableError
from .func_algebra import chart_k_values, pullback_jet, stereo_to_sphere
from .sphere_geom import ChartFrame  # noqa: F401  (part of the call signatures)

DEFAULT_TOL = 1e-6
DEFAULT_EXACTNESS = 23
MAX_DEPTH = 40
SERIES_ORDER = 12
R_SWITCH = 0.1


def sphere_monomial_integral(a):
    """Integral of omega^a over the unit sphere S^2 (4 pi normalization)."""
    if any(p % 2 for p in a):
        return 0.0
    num = 1.0
    for p in a:
        for j in range(p - 1, 0, -2):
            num *= j
    den = 1.0
    for j in range(sum(a) + 1, 0, -2):
        den *= j
    return 4.0 * np.pi * num / den


@dataclass(frozen=True)
class AngularRule:
    """Product Gauss-Legendre x trapezoid quadrature on S^2.

    Exact for all spherical polynomials up to exactness_degree, and exactly
    antipodally symmetric, so odd integrands average to zero to roundoff.
    """

    nodes: np.ndarray  # (n, 3) unit vectors
    weights: np.ndarray  # (n,), summing to 4 pi
    exactness_degree: int

    @staticmethod
    def product_rule(exactness_degree=DEFAULT_EXACTNESS):
        n_polar = exactness_degree // 2 + 1
        n_az = exactness_degree + 1
        if n_az % 2:
            n_az += 1  # even count keeps the node set antipodally symmetric
        t, wt = np.polynomial.legendre.leggauss(n_polar)
        phi = 2.0 * np.pi * np.arange(n_az) / n_az
        st = np.sqrt(1.0 - t ** 2)
        nodes = np.empty((n_polar * n_az, 3))
        weights = np.empty(n_polar * n_az)
        idx = 0
        for i in range(n_polar):
            nodes[idx:idx + n_az, 0] = st[i] * np.cos(phi)
            nodes[idx:idx + n_az, 1] = st[i] * np.sin(phi)
            nodes[idx:idx + n_az, 2] = t[i]
            weights[idx:idx + n_az] = wt[i] * 2.0 * np.pi / n_az
            idx += n_az
        return AngularRule(nodes, weights, exactness_degree)


@lru_cache(maxsize=8)
def default_rule(exactness_degree=DEFAULT_EXACTNESS):
    return AngularRule.product_rule(exactness_degree)


def shell_average(f, r, rule=None):
    """Integral of f over the sphere of radius r (surface measure of S^2)."""
    rule = rule or default_rule()
    return float(rule.weights @ np.asarray(f(r * rule.nodes), dtype=np.float64))


@dataclass(frozen=True)
class PVResult:
    value: float
    error_estimate: float
    shells_used: int


def _adaptive_simpson(f, a, b, tol, max_depth=MAX_DEPTH):
    """Deterministic adaptive Simpson; returns (value, error_estimate, evals)."""
    evals = [0]

    def ev(x):
        evals[0] += 1
        return f(x)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        flm = ev(0.5 * (a + m))
        frm = ev(0.5 * (m + b))
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        err = (left + right - whole) / 15.0
        if depth >= max_depth or abs(err) <= tol:
            return left + right + err, abs(err)
        lv, le = recurse(a, m, fa, flm, fm, left, tol / 2.0, depth + 1)
        rv, re = recurse(m, b, fm, frm, fb, right, tol / 2.0, depth + 1)
        return lv + rv, le + re

    fa, fm, fb = ev(a), ev(0.5 * (a + b)), ev(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    value, err = recurse(a, b, fa, fm, fb, whole, tol, 0)
    return value, err, evals[0]


def hessian_boundary_integral(h):
    """Closed form of the boundary integral of (x^T H x)^2 over |x| = 1."""
    h = np.asarray(h, dtype=np.float64)
    tr = np.trace(h)
    fro2 = float(np.sum(h * h))
    return 4.0 * np.pi / 15.0 * (tr * tr + 2.0 * fro2)


def hessian_boundary_integral_quadrature(h, rule=None):
    """Quadrature cross-check of hessian_boundary_integral."""
    rule = rule or default_rule()
    q = np.einsum("ni,ij,nj->n", rule.nodes, np.asarray(h, dtype=np.float64), rule.nodes)
    return float(rule.weights @ q ** 2)


def jet_boundary_average(jet, m):
    """Boundary integral over |x| = 1 of the degree-m homogeneous jet part.

    Zero for odd m; (2 pi / 3) * laplacian for m = 2 (spherical-harmonics
    identity used by the local invariants).
    """
    if m > jet.order:
        raise ValueError(f"jet only carries order {jet.order}")
    return float(sum(c * sphere_monomial_integral(a) for a, c in jet.coeffs if sum(a) == m))


def _series_inner_integral(jet, subtract_order, weight_power, moment, r_switch):
    """Closed-form inner radial integral of the polynomial Taylor remainder."""
    eye = np.eye(3, dtype=int)
    total = 0.0
    top = {}
    for a, c in jet.coeffs:
        n = sum(a)
        if n <= subtract_order:
            continue
        b = tuple(a + eye[moment - 1]) if moment else a
        j = sphere_monomial_integral(b)
        if j == 0.0:
            continue
        expo = n + (4 if moment else 3) - weight_power
        if expo <= 0:
            raise NonIntegrableError(
                f"non-decaying shell average (monomial order {n}, weight {weight_power})")
        contrib = c * j * r_switch ** expo / expo
        total += contrib
        top[n] = top.get(n, 0.0) + abs(contrib)
    # truncation proxy: magnitude of the highest contributing order
    tail = top[max(top)] if top else 0.0
    return total, tail


def pv_weighted_integral(spec, frame, y, subtract_order, weight_power, moment=0,
                         tol=DEFAULT_TOL, rule=None, include_perturbation=True,
                         bump_scale=None, r_switch=R_SWITCH):
    """PV integral of (k_theta(y+x) - T^m(x)) * (x_i or 1) / |x|^w over R^3.

    subtract_order m in {2, 3}; weight_power w in {6, 8}; moment 0 means no
    x_i factor, i in {1, 2, 3} selects the component.  The Taylor polynomial
    T^m is taken from the exact jet at y.
    """
    if (subtract_order, weight_power) not in {(2, 6), (3, 8)}:
        raise ValueError("supported (subtract_order, weight_power): (2,6) and (3,8)")
    rule = rule or default_rule()
    y = tuple(float(v) for v in np.asarray(y, dtype=np.float64))
    if bump_scale is None:
        bump_scale = spec.s if include_perturbation else 0.0

    base_pt = stereo_to_sphere(frame, np.array(y))
    bumps = [b for b in spec.bump_perturbations if bump_scale] if spec.bump_perturbations else []
    if bumps:
        clear = min(b.clearance(base_pt) for b in bumps)
        if clear < 1e-3:
            raise NonIntegrableError("base point lies inside a perturbation support")

    jet = pullback_jet(spec, frame, y, include_perturbation=include_perturbation,
                       order=SERIES_ORDER, bump_scale=0.0)
    sub = jet.truncated(subtract_order)

    nodes, weights = rule.nodes, rule.weights
    shells = [0]

    def phi(r):
        shells[0] += 1
        pts = y + r * nodes
        vals = chart_k_values(spec, frame, pts, include_perturbation=include_perturbation,
                              bump_scale=bump_scale)
        g = vals - sub.evaluate(r * nodes)
        if moment:
            g = g * nodes[:, moment - 1]
        avg = float(weights @ g)
        p = (3 if moment else 2) - weight_power
        return r ** p * avg

    def phi_bump(r):
        shells[0] += 1
        amb = chart_points(frame.basis, y + r * nodes)
        vals = np.zeros(nodes.shape[0])
        for b in bumps:
            vals += bump_scale * b.evaluate(amb)
        if moment:
            vals = vals * nodes[:, moment - 1]
        avg = float(weights @ vals)
        p = (3 if moment else 2) - weight_power
        return r ** p * avg

    # decay sanity check near the origin (series view)
    inner, series_tail = _series_inner_integral(jet, subtract_order, weight_power,
                                                moment, r_switch)
    mid, err_mid, _ = _adaptive_simpson(phi, r_switch, 1.0, tol / 3.0)

    def phi_tail(u):
        if u == 0.0:
            return 0.0
        return phi(1.0 / u) / u ** 2

    tail, err_tail, _ = _adaptive_simpson(phi_tail, 0.0, 1.0, tol / 3.0)

    value = inner + mid + tail
    err = err_mid + err_tail + series_tail
    if bumps:
        bump_inner, err_b, _ = _adaptive_simpson(phi_bump, 1e-6, r_switch, tol / 3.0)
        value += bump_inner
        err += err_b
    return PVResult(value=float(value), error_estimate=float(max(err, 1e-15)),
                    shells_used=shells[0])


def bump_weight_integral(spec, frame, weight_power=6, tol=DEFAULT_TOL, rule=None, y=(0.0, 0.0, 0.0)):
    """Integral of h_theta(y+x) |x|^(-w) dx for the unit-scale bump sum h."""
    rule = rule or default_rule()
    y = np.asarray(y, dtype=np.float64)
    nodes, weights = rule.nodes, rule.weights
    shells = [0]

    def phi(r):
        shells[0] += 1
        amb = chart_points(frame.basis, y + r * nodes)
        vals = np.zeros(nodes.shape[0])
        for b in spec.bump_perturbations:
            vals += b.evaluate(amb)
        return r ** (2 - weight_power) * float(weights @ vals)

    base_pt = stereo_to_sphere(frame, y)
    clear = min((b.clearance(base_pt) for b in spec.bump_perturbations), default=None)
    if clear is None:
        return PVResult(0.0, 0.0, 0)
    if clear < 1e-3:
        raise NonIntegrableError("chart center lies inside a perturbation support")
    # support is bounded away from the origin: integrate [r_lo, 1] and the tail
    r_lo = max(1e-3, 0.25 * clear)
    mid, e1, _ = _adaptive_simpson(phi, r_lo, 1.0, tol / 2.0)

    def phi_tail(u):
        if u == 0.0:
            return 0.0
        return phi(1.0 / u) / u ** 2

    tail, e2, _ = _adaptive_simpson(phi_tail, 0.0, 1.0, tol / 2.0)
    return PVResult(float(mid + tail), float(max(e1 + e2, 1e-15)), shells[0])
