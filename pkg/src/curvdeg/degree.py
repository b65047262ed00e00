"""Degree counts over t in (0, 1] and the per-interval solvability report.

d(t) = -(1 + sum over the negative-sign critical points of (-1)^index).
The count is constant between breakpoints -a1/a2 of the set T and is only
defined away from them, so the profile evaluates interval midpoints.
"""

from dataclasses import dataclass

from .errors import BreakpointError, NotNondegenerateError
from .invariants import analyze
from .pv_quadrature import DEFAULT_TOL

BREAKPOINT_TOL = 1e-9


def _degree_from_analysis(analysis, t):
    for b in analysis.breakpoints():
        if abs(t - b) <= BREAKPOINT_TOL * max(1.0, abs(b)):
            raise BreakpointError(f"t = {t} is a breakpoint; degree undefined there")
    return -(1 + sum((-1) ** r.morse_index for r in analysis.crit_minus(t)))


def degree_at(spec, t, n_starts=512, seed=0, tol=DEFAULT_TOL):
    """The degree at a single t in (0, 1] away from breakpoints."""
    if not 0.0 < t <= 1.0:
        raise ValueError("t must lie in (0, 1]")
    return _degree_from_analysis(analyze(spec, n_starts, seed, tol), t)


@dataclass(frozen=True)
class DegreeReport:
    """Breakpoints in (0, 1], per-interval degrees, and solvability verdicts."""

    breakpoints: tuple
    intervals: tuple  # (t_lo, t_hi, degree, solvable)
    per_point: tuple  # (CriticalRecord, LocalInvariants, in-crit-minus per interval)

    @property
    def excluded_t(self):
        return self.breakpoints


def degree_profile(spec, n_starts=512, seed=0, tol=DEFAULT_TOL):
    """Degrees on the open intervals of (0, 1] cut at the breakpoints."""
    analysis = analyze(spec, n_starts, seed, tol)
    cuts = [b for b in analysis.breakpoints() if 0.0 < b < 1.0]
    edges = [0.0] + cuts + [1.0]
    intervals = []
    memberships = [[] for _ in analysis.invariants]
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi)
        included = set(id(r) for r in analysis.crit_minus(mid))
        d = -(1 + sum((-1) ** r.morse_index
                      for r in analysis.records if id(r) in included))
        intervals.append((lo, hi, d, d != 0))
        for row, inv in zip(memberships, analysis.invariants):
            row.append(id(inv.record) in included)
    per_point = tuple((inv.record, inv, tuple(row))
                      for inv, row in zip(analysis.invariants, memberships))
    return DegreeReport(breakpoints=tuple(cuts), intervals=tuple(intervals),
                        per_point=per_point)


def nondegenerate_degree(spec, n_starts=512, seed=0, tol=DEFAULT_TOL):
    """The t-independent count; requires a nonzero Laplacian at every point."""
    analysis = analyze(spec, n_starts, seed, tol)
    flat = tuple(inv.record for inv in analysis.invariants
                 if inv.record.sign_laplacian == 0)
    if flat:
        locs = ", ".join(str(tuple(round(float(c), 6) for c in r.location.coords))
                         for r in flat)
        raise NotNondegenerateError(
            f"vanishing Laplacian at critical points: {locs}", offending=flat)
    return -(1 + sum((-1) ** inv.record.morse_index for inv in analysis.invariants
                     if inv.record.sign_laplacian == -1))
