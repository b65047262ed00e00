"""Curvature functions on S^3 and exact Taylor jets of their chart pullbacks.

The base curvature K and the polynomial perturbation are ambient polynomials
in X1..X4; bump perturbations are compactly supported radial profiles.  The
working normalization is k = (K - 6)/6; the polynomial perturbation and the
bumps act on k and are scaled by the spec's ``s``.

Chart pullbacks k_theta = k o sigma_theta are rational: every ambient
monomial becomes a polynomial over the common denominator (1+|x|^2)^d.  Jets
are computed by exact polynomial shift plus truncated power-series division,
so polynomial specs give machine-precision derivatives to any order.  Bump
contributions to jets use high-order finite differences and are exactly zero
away from the support.
"""

from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import product
from math import factorial

import numpy as np

from . import polytools as pt
from .backend import chart_points, eval_poly
from .sphere_geom import SpherePoint, stereo_to_sphere


@dataclass(frozen=True)
class AmbientPoly:
    """Sparse polynomial in the ambient coordinates X1..X4."""

    terms: tuple  # ((p1, p2, p3, p4), coeff) pairs, unique exponents

    def __init__(self, terms):
        acc = {}
        for exps, c in dict(terms).items() if isinstance(terms, dict) else terms:
            e = tuple(int(p) for p in exps)
            if len(e) != 4 or any(p < 0 for p in e):
                raise ValueError(f"bad exponent tuple {e}")
            acc[e] = acc.get(e, 0.0) + float(c)
        acc = {e: c for e, c in sorted(acc.items()) if c != 0.0}
        object.__setattr__(self, "terms", tuple(acc.items()))

    @property
    def degree(self):
        return max((sum(e) for e, _ in self.terms), default=0)

    def as_dict(self):
        return dict(self.terms)

    def evaluate(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=np.float64))
        return pt.p_eval(self.as_dict(), pts)

    def __add__(self, other):
        return AmbientPoly(pt.p_add(self.as_dict(), other.as_dict()))

    def scaled(self, c):
        return AmbientPoly(pt.p_scale(self.as_dict(), c))

    def rotated(self, q):
        """The composition X -> P(Q^T X), i.e. the pushforward under Q."""
        q = np.asarray(q, dtype=np.float64)
        lin = [{tuple(np.eye(4, dtype=int)[i]): q[i, j] for i in range(4) if q[i, j] != 0.0}
               for j in range(4)]  # (Q^T X)_j as a polynomial
        out = {}
        for e, c in self.terms:
            term = {(0, 0, 0, 0): c}
            for j, p in enumerate(e):
                if p:
                    term = pt.p_mul(term, pt.p_pow(lin[j], p))
            out = pt.p_add(out, term)
        return AmbientPoly(out)

    @staticmethod
    def diag_quadratic(c1, c2, c3, c4):
        return AmbientPoly({(2, 0, 0, 0): c1, (0, 2, 0, 0): c2,
                            (0, 0, 2, 0): c3, (0, 0, 0, 2): c4})


@dataclass(frozen=True)
class BumpFunction:
    """Compactly supported C-infinity radial bump in chordal distance.

    Profile amplitude * exp(1 - 1/(1 - (d/radius)^2)) inside d < radius and
    identically zero outside.  A negative amplitude is allowed so the family
    k - s*h is expressible; the profile's sign is then constant.
    """

    center: SpherePoint
    radius: float
    amplitude: float

    def __post_init__(self):
        if not isinstance(self.center, SpherePoint):
            object.__setattr__(self, "center", SpherePoint(self.center))
        if not self.radius > 0.0:
            raise ValueError("bump radius must be positive")

    def evaluate(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=np.float64))
        d2 = np.einsum("ij,ij->i", pts - self.center.array, pts - self.center.array)
        u = d2 / self.radius ** 2
        out = np.zeros(pts.shape[0])
        inside = u < 1.0 - 1e-14
        out[inside] = self.amplitude * np.exp(1.0 - 1.0 / (1.0 - u[inside]))
        return out

    def clearance(self, point):
        """Chordal distance from point to the support (negative if inside)."""
        return point.chordal_distance(self.center) - self.radius


@dataclass(frozen=True)
class CurvatureSpec:
    """The curvature function K with its perturbation data.

    k_total = (base - 6)/6 + s * (poly_perturbation + sum of bumps); the
    polynomial perturbation and the bumps act at the k-level.
    """

    base: AmbientPoly
    poly_perturbation: AmbientPoly = None
    bump_perturbations: tuple = ()
    s: float = 0.0
    positivity_checked: bool = False

    def __post_init__(self):
        if self.s < 0.0:
            raise ValueError("perturbation scale s must be nonnegative")
        object.__setattr__(self, "bump_perturbations", tuple(self.bump_perturbations))

    def with_checked_positivity(self, n=10_000, seed=7):
        if positivity_margin(self, n=n, seed=seed) <= 0.0:
            raise ValueError("K + perturbation is not positive on the sample")
        return replace(self, positivity_checked=True)


def sphere_sample(n, seed=7):
    """Quasi-uniform sample of n points on S^3 (normalized Gaussians)."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((n, 4))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def positivity_margin(spec, n=10_000, seed=7):
    """min over a dense sample of the total curvature K + 6 s (pert + bumps)."""
    pts = np.vstack([sphere_sample(n, seed), np.eye(4), -np.eye(4)])
    return float(np.min(evaluate_many(spec, pts, include_perturbation=True)))


def evaluate_many(spec, pts, include_perturbation=True):
    """K-side values on an (n, 4) batch of sphere points."""
    vals = spec.base.evaluate(pts)
    if include_perturbation and spec.s:
        if spec.poly_perturbation is not None:
            vals = vals + 6.0 * spec.s * spec.poly_perturbation.evaluate(pts)
        for b in spec.bump_perturbations:
            vals = vals + 6.0 * spec.s * b.evaluate(pts)
    return vals


def evaluate(spec, point, include_perturbation=True):
    """K(point), including the scaled perturbations when requested."""
    return float(evaluate_many(spec, point.array[None, :], include_perturbation)[0])


def k_value(spec, point, include_perturbation=True):
    return (evaluate(spec, point, include_perturbation) - 6.0) / 6.0


@lru_cache(maxsize=256)
def _k_poly4(spec, include_poly_perturbation):
    """k as a 4-variable polynomial dict (bumps excluded)."""
    out = pt.p_scale(spec.base.as_dict(), 1.0 / 6.0)
    out = pt.p_add(out, {(0, 0, 0, 0): -1.0})
    if include_poly_perturbation and spec.poly_perturbation is not None and spec.s:
        out = pt.p_add(out, pt.p_scale(spec.poly_perturbation.as_dict(), spec.s))
    return out


@lru_cache(maxsize=256)
def _k_poly4_arrays(spec, include_poly_perturbation):
    return pt.to_arrays(_k_poly4(spec, include_poly_perturbation), 4)


@lru_cache(maxsize=256)
def _chart_numerator(spec, frame, include_poly_perturbation):
    """k_theta as numerator / (1+|x|^2)^d: returns (3-var dict, d)."""
    kp = _k_poly4(spec, include_poly_perturbation)
    d = max(pt.p_degree(kp), 1)
    b = frame.basis
    # sigma components X_j = N_j(x) / (1+|x|^2)
    n_comp = []
    for j in range(4):
        nj = {(1, 0, 0): 2.0 * b[0, j], (0, 1, 0): 2.0 * b[1, j],
              (0, 0, 1): 2.0 * b[2, j], (0, 0, 0): b[3, j],
              (2, 0, 0): -b[3, j], (0, 2, 0): -b[3, j], (0, 0, 2): -b[3, j]}
        n_comp.append(pt.p_prune(nj))
    den = {(0, 0, 0): 1.0, (2, 0, 0): 1.0, (0, 2, 0): 1.0, (0, 0, 2): 1.0}
    num = {}
    for e, c in kp.items():
        term = {(0, 0, 0): c}
        for j, p in enumerate(e):
            if p:
                term = pt.p_mul(term, pt.p_pow(n_comp[j], p))
        deg = sum(e)
        if deg < d:
            term = pt.p_mul(term, pt.p_pow(den, d - deg))
        num = pt.p_add(num, term)
    return num, d


def chart_k_values(spec, frame, pts3, include_perturbation=True, bump_scale=None):
    """k_theta on an (n, 3) batch of chart coordinates."""
    pts3 = np.atleast_2d(np.asarray(pts3, dtype=np.float64))
    amb = chart_points(frame.basis, pts3)
    powers, coeffs = _k_poly4_arrays(spec, include_perturbation)
    vals = eval_poly(powers, coeffs, amb)
    scale = spec.s if bump_scale is None and include_perturbation else (bump_scale or 0.0)
    if scale:
        for b in spec.bump_perturbations:
            vals = vals + scale * b.evaluate(amb)
    return vals


@dataclass(frozen=True)
class TaylorJet4:
    """Taylor coefficients of k_theta at a chart point y.

    coeffs maps exponent triples a to c_a with k_theta(y+u) = sum c_a u^a up
    to the stored order (default 4, higher orders used internally by the
    principal-value engine).  Derivatives are a! * c_a.
    """

    base_chart_point: tuple
    coeffs: tuple  # sorted ((a1,a2,a3), c) pairs
    order: int = 4

    @staticmethod
    def from_dict(y, coeffs, order=4):
        items = tuple(sorted((e, c) for e, c in coeffs.items() if sum(e) <= order and c != 0.0))
        return TaylorJet4(tuple(float(v) for v in y), items, order)

    def as_dict(self):
        return dict(self.coeffs)

    def coeff(self, a):
        return dict(self.coeffs).get(tuple(a), 0.0)

    def derivative(self, a):
        a = tuple(a)
        f = 1
        for p in a:
            f *= factorial(p)
        return self.coeff(a) * f

    def evaluate(self, disp, min_order=0, max_order=None):
        """Evaluate the (partial) jet at displacements (n, 3) from y."""
        hi = self.order if max_order is None else max_order
        sub = {e: c for e, c in self.coeffs if min_order <= sum(e) <= hi}
        disp = np.atleast_2d(np.asarray(disp, dtype=np.float64))
        return pt.p_eval(sub, disp)

    def truncated(self, m):
        return TaylorJet4.from_dict(self.base_chart_point, self.as_dict(), order=m)


@dataclass(frozen=True)
class JetQuantities:
    value: float
    gradient: tuple
    hessian: tuple  # 3x3 nested
    laplacian: float
    grad_laplacian: tuple
    bilaplacian: float

    @property
    def hessian_array(self):
        return np.array(self.hessian)

    @property
    def gradient_array(self):
        return np.array(self.gradient)

    @property
    def grad_laplacian_array(self):
        return np.array(self.grad_laplacian)


def jet_quantities(jet):
    """Value, gradient, Hessian, Laplacian, grad-Laplacian, bilaplacian."""
    c = jet.as_dict()

    def d(a):  # derivative with multinomial bookkeeping
        f = 1
        for p in a:
            f *= factorial(p)
        return c.get(tuple(a), 0.0) * f

    eye = np.eye(3, dtype=int)
    grad = tuple(d(eye[i]) for i in range(3))
    hess = tuple(tuple(d(eye[i] + eye[j]) for j in range(3)) for i in range(3))
    lap = sum(hess[i][i] for i in range(3))
    grad_lap = tuple(sum(d(eye[i] + 2 * eye[j]) for j in range(3)) for i in range(3))
    bilap = float(sum(d(2 * eye[i] + 2 * eye[j]) for i in range(3) for j in range(3)))
    return JetQuantities(value=c.get((0, 0, 0), 0.0), gradient=grad, hessian=hess,
                         laplacian=float(lap), grad_laplacian=grad_lap, bilaplacian=bilap)


_FD_OFFSETS = np.arange(-4, 5)


def _fd_jet_dict(f, y, order, h=0.05):
    """Finite-difference jet of a smooth scalar field on R^3 at y."""
    y = np.asarray(y, dtype=np.float64)
    grid = np.array([y + h * np.array(o) for o in product(_FD_OFFSETS, repeat=3)])
    vals = f(grid).reshape(9, 9, 9)
    w = [pt.fd_weights(_FD_OFFSETS * h, 0.0, m) for m in range(order + 1)]
    out = {}
    for a in product(range(order + 1), repeat=3):
        if sum(a) > order:
            continue
        deriv = np.einsum("i,j,k,ijk->", w[a[0]], w[a[1]], w[a[2]], vals)
        fct = factorial(a[0]) * factorial(a[1]) * factorial(a[2])
        val = deriv / fct
        if abs(val) > 1e-11:
            out[a] = val
    return out


@lru_cache(maxsize=512)
def _pullback_jet_cached(spec, frame, y, include_perturbation, order, bump_scale):
    num, d = _chart_numerator(spec, frame, include_perturbation)
    y2 = sum(v * v for v in y)
    num_y = pt.p_shift(num, y, order)
    den_y = {(0, 0, 0): 1.0 + y2, (1, 0, 0): 2.0 * y[0], (0, 1, 0): 2.0 * y[1],
             (0, 0, 1): 2.0 * y[2], (2, 0, 0): 1.0, (0, 2, 0): 1.0, (0, 0, 2): 1.0}
    den_pow = pt.p_pow(pt.p_prune(den_y), d, order)
    jet = pt.p_mul(num_y, pt.series_reciprocal(den_pow, order), order)
    if bump_scale and spec.bump_perturbations:
        base_pt = stereo_to_sphere(frame, np.array(y))
        # outside the support the bump is flat to all orders: the jet is zero
        # exactly, so differencing (which would poke into the support) is wrong
        near = [b for b in spec.bump_perturbations if b.clearance(base_pt) < -1e-9]
        if near:
            def bump_field(pts3):
                amb = chart_points(frame.basis, pts3)
                acc = np.zeros(pts3.shape[0])
                for b in near:
                    acc += b.evaluate(amb)
                return bump_scale * acc

            jet = pt.p_add(jet, _fd_jet_dict(bump_field, y, min(order, 4)))
    return TaylorJet4.from_dict(y, jet, order)


def pullback_jet(spec, frame, y, include_perturbation=True, order=4, bump_scale=None):
    """Taylor jet of k_theta at chart point y (exact for polynomial parts)."""
    y = tuple(float(v) for v in np.asarray(y, dtype=np.float64))
    if bump_scale is None:
        bump_scale = spec.s if include_perturbation else 0.0
    return _pullback_jet_cached(spec, frame, y, include_perturbation, order, float(bump_scale))
