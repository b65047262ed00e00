"""Multistart Newton search for critical points of k on S^3 in moving charts.

Each Newton step recenters the stereographic chart at the current iterate,
so the step is always taken at the chart origin where gradient and Hessian
of the pullback have simple closed forms for polynomial curvatures.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import polytools as pt
from .errors import CurvdegError, DegenerateFunctionError
from .func_algebra import _k_poly4, jet_quantities, pullback_jet, sphere_sample
from .sphere_geom import SpherePoint, make_frame, stereo_to_sphere

DEGENERACY_TOL = 1e-7
LAPLACIAN_ZERO_TOL = 1e-7
DEDUP_TOL = 1e-6
GRAD_TOL = 1e-10
MAX_NEWTON_ITERS = 80


@dataclass(frozen=True)
class CriticalRecord:
    """A classified critical point of k (equivalently of K)."""

    location: SpherePoint
    grad_norm: float
    hessian_eigs: tuple  # ascending
    morse_index: int
    laplacian: float
    nondegenerate: bool

    @property
    def sign_laplacian(self):
        scale = max(1.0, float(np.max(np.abs(self.hessian_eigs))))
        if abs(self.laplacian) < LAPLACIAN_ZERO_TOL * scale:
            return 0
        return 1 if self.laplacian > 0 else -1


@lru_cache(maxsize=128)
def _ambient_derivs(spec, include_perturbation):
    """Arrays for the ambient gradient and Hessian polynomials of k."""
    kp = _k_poly4(spec, include_perturbation)
    grads = [pt.to_arrays(pt.p_diff(kp, i), 4) for i in range(4)]
    hess = [[pt.to_arrays(pt.p_diff(pt.p_diff(kp, i), j), 4) for j in range(4)]
            for i in range(4)]
    return grads, hess


def _bumps_near(spec, point, margin=0.3):
    return [b for b in spec.bump_perturbations if b.clearance(point) < margin]


def chart_grad_hess(spec, point, frame, include_perturbation=True):
    """Gradient and Hessian of k_theta at the chart center.

    Chain rule through sigma with D sigma(0) = 2 e_i and
    D^2 sigma(0)_{ij} = -4 delta_ij theta.
    """
    from .backend import eval_poly

    grads, hess = _ambient_derivs(spec, include_perturbation)
    p = point.array[None, :]
    gk = np.array([eval_poly(pw, cf, p)[0] for pw, cf in grads])
    hk = np.array([[eval_poly(hess[i][j][0], hess[i][j][1], p)[0] for j in range(4)]
                   for i in range(4)])
    e = frame.basis[:3]
    g = 2.0 * e @ gk
    h = 4.0 * e @ hk @ e.T - 4.0 * float(gk @ point.array) * np.eye(3)
    if include_perturbation and spec.s and _bumps_near(spec, point):
        g_b, h_b = _bump_grad_hess(spec, frame)
        g = g + g_b
        h = h + h_b
    return g, h


def _bump_grad_hess(spec, frame, h=1e-3):
    """Second-order finite differences of the bump part at the chart center."""
    offsets = []
    for i in range(3):
        for sgn in (-1.0, 1.0):
            v = np.zeros(3)
            v[i] = sgn * h
            offsets.append(v)
    for i in range(3):
        for j in range(i + 1, 3):
            for si in (-1.0, 1.0):
                for sj in (-1.0, 1.0):
                    v = np.zeros(3)
                    v[i], v[j] = si * h, sj * h
                    offsets.append(v)
    pts = np.vstack([np.zeros(3), *offsets])

    def bump_vals(x):
        from .backend import chart_points
        amb = chart_points(frame.basis, x)
        out = np.zeros(x.shape[0])
        for b in spec.bump_perturbations:
            out += spec.s * b.evaluate(amb)
        return out

    f = bump_vals(pts)
    g = np.zeros(3)
    hm = np.zeros((3, 3))
    idx = 1
    for i in range(3):
        fm, fp = f[idx], f[idx + 1]
        g[i] = (fp - fm) / (2.0 * h)
        hm[i, i] = (fp - 2.0 * f[0] + fm) / h ** 2
        idx += 2
    for i in range(3):
        for j in range(i + 1, 3):
            fmm, fmp, fpm, fpp = f[idx], f[idx + 1], f[idx + 2], f[idx + 3]
            hm[i, j] = hm[j, i] = (fpp - fpm - fmp + fmm) / (4.0 * h ** 2)
            idx += 4
    return g, hm


def _newton_from(spec, start, include_perturbation=True):
    point = start
    for _ in range(MAX_NEWTON_ITERS):
        frame = make_frame(point, seed=0)
        g, hm = chart_grad_hess(spec, point, frame, include_perturbation)
        gn = float(np.linalg.norm(g))
        if gn < 1e-13:
            return point, gn
        try:
            step = -np.linalg.solve(hm, g)
            if not np.all(np.isfinite(step)):
                raise np.linalg.LinAlgError
        except np.linalg.LinAlgError:
            step = -np.linalg.pinv(hm) @ g
        sn = float(np.linalg.norm(step))
        if sn > 0.5:
            step *= 0.5 / sn
        lam = 1.0
        accepted = None
        for _ in range(25):
            cand = stereo_to_sphere(frame, lam * step)
            g2, _ = chart_grad_hess(spec, cand, make_frame(cand, seed=0),
                                    include_perturbation)
            if float(np.linalg.norm(g2)) < gn:
                accepted = cand
                break
            lam *= 0.5
        if accepted is None:
            return point, gn
        point = accepted
    frame = make_frame(point, seed=0)
    g, _ = chart_grad_hess(spec, point, frame, include_perturbation)
    return point, float(np.linalg.norm(g))


def classify_point(spec, point, include_perturbation=True):
    frame = make_frame(point, seed=0)
    q = jet_quantities(pullback_jet(spec, frame, (0.0, 0.0, 0.0),
                                    include_perturbation=include_perturbation))
    eigs = np.linalg.eigvalsh(q.hessian_array)
    nondeg = float(np.min(np.abs(eigs))) > DEGENERACY_TOL
    return CriticalRecord(
        location=point,
        grad_norm=float(np.linalg.norm(q.gradient_array)),
        hessian_eigs=tuple(float(v) for v in eigs),
        morse_index=int(np.sum(eigs < 0.0)),
        laplacian=q.laplacian,
        nondegenerate=nondeg,
    )


@lru_cache(maxsize=64)
def _find_cached(spec, n_starts, seed, include_perturbation):
    starts = [SpherePoint(v) for v in sphere_sample(n_starts, seed)]
    starts += [SpherePoint(v) for v in np.vstack([np.eye(4), -np.eye(4)])]
    found = []
    n_failed = 0
    for start in starts:
        point, gn = _newton_from(spec, start, include_perturbation)
        if gn > GRAD_TOL:
            n_failed += 1
            continue
        if any(point.chordal_distance(p) < DEDUP_TOL for p in found):
            continue
        found.append(point)
    if not found:
        raise CurvdegError(f"no critical points converged ({n_failed} starts failed)")
    found.sort(key=lambda p: p.coords, reverse=True)
    records = tuple(classify_point(spec, p, include_perturbation) for p in found)
    degenerate = [r for r in records if not r.nondegenerate]
    if degenerate:
        locs = ", ".join(str(np.round(r.location.array, 6)) for r in degenerate[:4])
        raise DegenerateFunctionError(
            f"Morse hypothesis violated: degenerate Hessian at {locs}")
    return records


def find_critical_points(spec, n_starts=512, seed=0, include_perturbation=True):
    """All critical points of k found by multistart Newton, classified.

    Completeness is heuristic: n_starts quasi-uniform seeds plus the
    coordinate vertices; no certification is attempted.
    """
    if n_starts < 64:
        raise ValueError("n_starts must be at least 64")
    return _find_cached(spec, int(n_starts), int(seed), bool(include_perturbation))


def classify_table(spec, n_starts=512, seed=0):
    """Rows (location, sign of Laplacian, Morse index) per critical point."""
    records = find_critical_points(spec, n_starts, seed)
    return [(r.location, r.sign_laplacian, r.morse_index) for r in records]
