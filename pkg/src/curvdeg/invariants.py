"""Local invariants a0, a1, a2 at critical points and the sets M, M*, T.

a0 is a principal-value integral of the chart pullback against |x|^-6 and is
the only quadrature-limited quantity; a1 and a2 come from the exact 4-jet.
The t-dependent membership test crit_minus applies a lexicographic sign rule
to (laplacian, a0, -(a1 + t a2)).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .critical import LAPLACIAN_ZERO_TOL, find_critical_points
from .errors import InconclusiveError, SingularHessianError
from .func_algebra import jet_quantities, pullback_jet
from .pv_quadrature import DEFAULT_TOL, hessian_boundary_integral, pv_weighted_integral
from .sphere_geom import make_frame

A0_ZERO_FLOOR = 1e-5
A2_ZERO_TOL = 1e-7
SIGN_TOL = 1e-9


@dataclass(frozen=True)
class LocalInvariants:
    """a0 (with error), a1, a2 and derived memberships at one critical point."""

    record: object
    a0: float
    a0_error: float
    a1: float
    a2: float

    @property
    def a0_zero_tol(self):
        return max(A0_ZERO_FLOOR, 3.0 * self.a0_error)

    @property
    def in_M(self):
        """laplacian = 0, a0 = 0, a2 != 0 at the tolerances."""
        r = self.record
        return (r.sign_laplacian == 0 and abs(self.a0) < self.a0_zero_tol
                and abs(self.a2) > A2_ZERO_TOL)

    @property
    def breakpoint(self):
        return -self.a1 / self.a2 if self.in_M else None

    def in_M_star(self, t0):
        return self.in_M and self.a1 + t0 * self.a2 > 0.0

    def sign_at(self, t):
        """Lexicographic sign of (laplacian, a0, -(a1 + t a2)); None if all small."""
        r = self.record
        scale = max(1.0, float(np.max(np.abs(r.hessian_eigs))))
        entries = (
            (r.laplacian, LAPLACIAN_ZERO_TOL * scale),
            (self.a0, self.a0_zero_tol),
            (-(self.a1 + t * self.a2), SIGN_TOL * max(1.0, abs(self.a1) + abs(self.a2))),
        )
        for value, tol in entries:
            if abs(value) > tol:
                return 1 if value > 0.0 else -1
        return None


def compute_a0(spec, record, tol=DEFAULT_TOL, frame_seed=0):
    """PV integral of (k_theta - 2-jet) |x|^-6; returns a PVResult."""
    if record.grad_norm > 1e-9:
        raise ValueError(f"not a critical point (|grad| = {record.grad_norm:.2e})")
    frame = make_frame(record.location, seed=frame_seed)
    return pv_weighted_integral(spec, frame, (0.0, 0.0, 0.0),
                                subtract_order=2, weight_power=6, tol=tol)


def _jet_q(spec, record, frame_seed):
    frame = make_frame(record.location, seed=frame_seed)
    return jet_quantities(pullback_jet(spec, frame, (0.0, 0.0, 0.0)))


def compute_a1(spec, record, frame_seed=0):
    """bilaplacian + g . H^-1 g with g the gradient of the laplacian."""
    if not record.nondegenerate:
        raise SingularHessianError("degenerate Hessian at the critical point")
    q = _jet_q(spec, record, frame_seed)
    g = q.grad_laplacian_array
    h = q.hessian_array
    try:
        corr = float(g @ np.linalg.solve(h, g))
    except np.linalg.LinAlgError:
        raise SingularHessianError("Hessian solve failed") from None
    return q.bilaplacian + corr


def compute_a2(spec, record, frame_seed=0):
    """k(theta) a1 - (15 / 8 pi) * boundary integral of (x^T H x)^2."""
    q = _jet_q(spec, record, frame_seed)
    a1 = compute_a1(spec, record, frame_seed)
    return float(q.value * a1
                 - 15.0 / (8.0 * np.pi) * hessian_boundary_integral(q.hessian_array))


def local_invariants(spec, record, tol=DEFAULT_TOL, frame_seed=0):
    pv = compute_a0(spec, record, tol=tol, frame_seed=frame_seed)
    return LocalInvariants(
        record=record,
        a0=pv.value,
        a0_error=pv.error_estimate,
        a1=compute_a1(spec, record, frame_seed),
        a2=compute_a2(spec, record, frame_seed),
    )


@dataclass(frozen=True)
class SpecAnalysis:
    """All critical points of a curvature spec with their local invariants."""

    spec: object
    invariants: tuple  # LocalInvariants, sorted by location

    @property
    def records(self):
        return tuple(inv.record for inv in self.invariants)

    def crit_minus(self, t):
        """Critical points whose lexicographic sign at t is -1."""
        out = []
        for inv in self.invariants:
            s = inv.sign_at(t)
            if s is None:
                loc = np.round(inv.record.location.array, 6)
                raise InconclusiveError(
                    f"all sign entries below tolerance at {loc} (t = {t})")
            if s == -1:
                out.append(inv.record)
        return tuple(out)

    def breakpoints(self):
        """Sorted distinct breakpoints -a1/a2 over members of M."""
        vals = sorted({round(float(inv.breakpoint), 12) for inv in self.invariants
                       if inv.in_M})
        return tuple(vals)


@lru_cache(maxsize=64)
def _analyze_cached(spec, n_starts, seed, tol):
    records = find_critical_points(spec, n_starts=n_starts, seed=seed)
    invs = tuple(local_invariants(spec, r, tol=tol) for r in records)
    return SpecAnalysis(spec=spec, invariants=invs)


def analyze(spec, n_starts=512, seed=0, tol=DEFAULT_TOL):
    """Find and classify all critical points, then attach local invariants."""
    return _analyze_cached(spec, int(n_starts), int(seed), float(tol))


def crit_minus(spec, t, n_starts=512, seed=0, tol=DEFAULT_TOL):
    return analyze(spec, n_starts, seed, tol).crit_minus(t)


def compute_T(spec, n_starts=512, seed=0, tol=DEFAULT_TOL):
    """The breakpoint set {-a1/a2 : theta in M}."""
    return analyze(spec, n_starts, seed, tol).breakpoints()
