"""Finite-dimensional reduction: bubbles, alpha terms, beta and gamma curves.

Everything here is leading-order: the explicit alpha_1..alpha_4 closed forms
stand in for the full projected gradient, whose remainder is
O(mu^(4+1/4) + mu^2 |grad|^2).  The curve s^theta(mu) solves gamma(s, mu) = 0
in s; its slope at mu = 0 has the closed form
(pi^2/24) (integral of h |x|^-6)^(-1) (a1 + t0 a2) / (1 + t0 k(theta)).
"""

import csv
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, NoContractionError
from .func_algebra import jet_quantities, pullback_jet
from .invariants import analyze
from .pv_quadrature import (DEFAULT_TOL, bump_weight_integral,
                            hessian_boundary_integral, pv_weighted_integral)
from .sphere_geom import make_frame

# constant prefactors of the alpha_1..alpha_4 closed forms (t0 factored out)
C_GRAD = np.pi / (3.0 ** 0.25 * np.sqrt(5.0))        # alpha1, alpha2
C_GRAD_LAP = np.pi / (3.0 ** 0.25 * 2.0 * np.sqrt(5.0))  # alpha3 y-components
C_PV6 = 3.0 ** 0.75 * 4.0 / (np.pi * np.sqrt(5.0))   # alpha3 mu-component
C_PV8 = 3.0 ** 0.75 * 8.0 / (np.pi * np.sqrt(5.0))   # alpha4 y-components
C_BILAP = 3.0 ** 0.75 * np.pi * np.sqrt(5.0) / 30.0  # alpha4 mu-component
C_BOUNDARY = 3.0 ** 0.75 * np.sqrt(5.0) / 16.0       # alpha4 mu-component, t0^2 piece
C_GAMMA = np.pi * np.sqrt(5.0) / (3.0 ** 0.75 * 4.0)  # gamma normalization
C_SLOPE = np.pi ** 2 / 24.0                           # blow-up slope
C_ALPHA_HAT = 3.0 ** 0.25 * np.sqrt(5.0) / np.pi      # beta fixed-point map

MU_MAX = 0.05
FIXED_POINT_TOL = 1e-12
MAX_FIXED_POINT_ITERS = 200
DEFAULT_MU_GRID = tuple(np.geomspace(1e-3, 5e-2, 20))

NEGATIVE_EIGENVALUE = -4.0
NEGATIVE_EIGENVALUE_MULTIPLICITY = 1
KERNEL_DIMENSION = 4


@dataclass(frozen=True)
class Bubble:
    """The standard bubble z_{mu,y}, concentrating at y as mu -> 0."""

    mu: float
    y: tuple

    def __post_init__(self):
        if not self.mu > 0.0:
            raise ValueError("bubble scale mu must be positive")
        object.__setattr__(self, "y", tuple(float(v) for v in self.y))


def bubble_eval(b, x):
    """mu^(-1/2) 3^(1/4) (1 + |(x - y)/mu|^2)^(-1/2)."""
    x = np.asarray(x, dtype=np.float64)
    d = (np.atleast_2d(x) - np.array(b.y)) / b.mu
    vals = b.mu ** -0.5 * 3.0 ** 0.25 / np.sqrt(1.0 + np.einsum("ij,ij->i", d, d))
    return float(vals[0]) if x.ndim == 1 else vals


@dataclass(frozen=True)
class AlphaTerms:
    """The four leading alpha vectors; component 0 is the mu-direction."""

    alpha1: tuple
    alpha2: tuple
    alpha3: tuple
    alpha4: tuple

    @property
    def total(self):
        return (np.array(self.alpha1) + np.array(self.alpha2)
                + np.array(self.alpha3) + np.array(self.alpha4))


def _jet_at(spec, frame, y, s):
    return pullback_jet(spec, frame, tuple(y), include_perturbation=True,
                        bump_scale=s)


def alpha_terms(spec, t0, s, b, frame, tol=DEFAULT_TOL, include_pv=True):
    """The explicit alpha_1..alpha_4 vectors at the bubble (mu, y).

    include_pv=False skips the two principal-value integrals (the
    mu-component of alpha3 and the y-components of alpha4), which is enough
    for the beta fixed point.
    """
    mu, y = b.mu, np.array(b.y)
    q = jet_quantities(_jet_at(spec, frame, y, s))
    w = (1.0 + t0 * q.value) ** -1.25
    g = q.gradient_array
    a1 = -mu * w * t0 * C_GRAD * np.array([0.0, *g])
    a2 = -mu ** 2 * w * t0 * C_GRAD * np.array([q.laplacian, 0.0, 0.0, 0.0])
    a3 = np.zeros(4)
    a3[1:] = -mu ** 3 * w * t0 * C_GRAD_LAP * q.grad_laplacian_array
    a4 = np.zeros(4)
    a4[0] = (mu ** 4 * w * t0 * C_BILAP * q.bilaplacian
             - t0 ** 2 * mu ** 4 * C_BOUNDARY * (1.0 + t0 * q.value) ** -2.25
             * hessian_boundary_integral(q.hessian_array))
    if include_pv:
        pv6 = pv_weighted_integral(spec, frame, y, subtract_order=2,
                                   weight_power=6, tol=tol, bump_scale=s)
        a3[0] = -mu ** 3 * w * t0 * C_PV6 * pv6.value
        for i in (1, 2, 3):
            pv8 = pv_weighted_integral(spec, frame, y, subtract_order=3,
                                       weight_power=8, moment=i, tol=tol,
                                       bump_scale=s)
            a4[i] = -mu ** 4 * w * t0 * C_PV8 * pv8.value
    return AlphaTerms(tuple(a1), tuple(a2), tuple(a3), tuple(a4))


def _check_flat_center(spec, frame):
    q = jet_quantities(_jet_at(spec, frame, (0.0, 0.0, 0.0), 0.0))
    if float(np.linalg.norm(q.gradient_array)) > 1e-9:
        raise DomainError("chart center is not a critical point")
    if abs(q.laplacian) > 1e-6 * max(1.0, float(np.max(np.abs(q.hessian_array)))):
        raise DomainError("laplacian does not vanish at the chart center")
    return q


def beta_curve(spec, t0, s, mu, frame, include_pv=False, tol=DEFAULT_TOL):
    """The fixed point y = beta(s, mu) of F(y) = y + H^-1 alpha_hat(y).

    Valid at a critical chart center with vanishing laplacian; the result is
    -mu^2/2 H^-1 grad(laplacian) + O(mu^3).
    """
    if not 0.0 < mu <= MU_MAX:
        raise DomainError(f"mu must lie in (0, {MU_MAX}]")
    q0 = _check_flat_center(spec, frame)
    h0 = q0.hessian_array
    k0 = q0.value
    scale = C_ALPHA_HAT / (t0 * mu) * (1.0 + t0 * k0) ** 1.25
    h0_inv = np.linalg.inv(h0)
    y = np.zeros(3)
    for _ in range(MAX_FIXED_POINT_ITERS):
        a = alpha_terms(spec, t0, s, Bubble(mu, tuple(y)), frame,
                        tol=tol, include_pv=include_pv)
        alpha_hat = scale * a.total[1:]
        y_next = y + h0_inv @ alpha_hat
        if np.linalg.norm(y_next) > 0.5:
            raise NoContractionError(f"beta iteration left the chart (mu = {mu})")
        step = float(np.linalg.norm(y_next - y))
        y = y_next
        if step < FIXED_POINT_TOL:
            return tuple(float(v) for v in y)
    raise NoContractionError(f"beta iteration did not converge (mu = {mu})")


def gamma(spec, t0, s, mu, frame, tol=DEFAULT_TOL, beta=None):
    """-(1 / t0 mu^3) (1 + t0 k)^(5/4) (pi sqrt5 / 3^(3/4) 4) alpha(beta)_0."""
    if beta is None:
        beta = beta_curve(spec, t0, s, mu, frame, tol=tol)
    k0 = jet_quantities(_jet_at(spec, frame, (0.0, 0.0, 0.0), 0.0)).value
    a = alpha_terms(spec, t0, s, Bubble(mu, beta), frame, tol=tol)
    return (-(1.0 + t0 * k0) ** 1.25 * C_GAMMA / (t0 * mu ** 3)
            * float(a.total[0]))


def gamma_derivatives(spec, t0, s, mu, frame, tol=DEFAULT_TOL):
    """Leading-order (d gamma/d s, d gamma/d mu) closed forms.

    d/ds = integral of h |x|^-6; d/dmu = -(pi^2/24)(1+t0 k)^-1 (a1 + t0 a2).
    """
    q = _check_flat_center(spec, frame)
    h_int = bump_weight_integral(spec, frame, tol=tol).value
    g = q.grad_laplacian_array
    a1 = q.bilaplacian + float(g @ np.linalg.solve(q.hessian_array, g))
    a2 = q.value * a1 - 15.0 / (8.0 * np.pi) * hessian_boundary_integral(q.hessian_array)
    d_mu = -C_SLOPE / (1.0 + t0 * q.value) * (a1 + t0 * a2)
    return h_int, d_mu


@dataclass(frozen=True)
class BlowUpCurve:
    """A blow-up curve mu -> (s, y) concentrating at theta as mu -> 0."""

    theta: object
    slope: float
    samples: tuple  # (mu, s, y) triples, mu increasing
    morse_index: int


def blowup_curves(spec, t0, n_starts=512, seed=0, tol=DEFAULT_TOL,
                  mu_grid=DEFAULT_MU_GRID):
    """One curve per critical point of the bump-free part in M*.

    The spec's bumps play the role of h; the polynomial perturbation stays
    part of k.  Returns an empty list when M* is empty.
    """
    if not spec.bump_perturbations:
        raise DomainError("blow-up tracing needs a bump perturbation h")
    base_spec = replace(spec, bump_perturbations=())
    analysis = analyze(base_spec, n_starts=n_starts, seed=seed, tol=tol)
    curves = []
    for inv in analysis.invariants:
        if not inv.in_M_star(t0):
            continue
        theta = inv.record.location
        frame = make_frame(theta, seed=0)
        h_int = bump_weight_integral(spec, frame, tol=tol).value
        if not h_int > 0.0:
            raise DomainError(
                f"h-weight integral must be positive at {tuple(theta.coords)}")
        k0 = jet_quantities(_jet_at(spec, frame, (0.0, 0.0, 0.0), 0.0)).value
        slope = C_SLOPE / h_int * (inv.a1 + t0 * inv.a2) / (1.0 + t0 * k0)
        samples = []
        for mu in mu_grid:
            beta = beta_curve(spec, t0, 0.0, mu, frame, tol=tol)
            g0 = gamma(spec, t0, 0.0, mu, frame, tol=tol, beta=beta)
            g1 = gamma(spec, t0, 1.0, mu, frame, tol=tol, beta=beta)
            # gamma is exactly linear in s here (h vanishes near the center)
            s_root = -g0 / (g1 - g0)
            samples.append((float(mu), float(s_root), beta))
        curves.append(BlowUpCurve(theta=theta, slope=float(slope),
                                  samples=tuple(samples),
                                  morse_index=4 - inv.record.morse_index))
    return curves


def spectrum(i, j):
    """The eigenvalue 1 - 15/((4 + 2(i + j - 1))^2 - 1) for i + j >= 2."""
    if i < 0 or j < 0 or i + j < 2:
        raise DomainError("spectrum requires i, j >= 0 with i + j >= 2")
    return 1.0 - 15.0 / ((4 + 2 * (i + j - 1)) ** 2 - 1)


def curves_to_csv(curves, path):
    """Write curve samples with columns matching the report schema."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta_index", "mu", "s", "y1", "y2", "y3",
                         "slope", "morse_index"])
        for idx, curve in enumerate(curves):
            for mu, s, y in curve.samples:
                writer.writerow([idx, repr(mu), repr(s), repr(y[0]), repr(y[1]),
                                 repr(y[2]), repr(curve.slope), curve.morse_index])
