"""Acceptance checks shared by the ``selftest`` command and the test suite.

Each check returns a detail string on success and raises AssertionError with
a diagnostic on failure.  The checks pin the package to its numeric anchors:
a2 = -224/9 at the flat pair of the reference quadratic, the breakpoint set
of the perturbed family, the degree table, and the reduction expansions.
"""

import time

import numpy as np

from .critical import find_critical_points
from .degree import degree_at, degree_profile, nondegenerate_degree
from .errors import NotNondegenerateError
from .func_algebra import (AmbientPoly, CurvatureSpec, chart_k_values,
                           jet_quantities, pullback_jet)
from .invariants import analyze, compute_a0, compute_a1, compute_a2, compute_T
from .problems import load_bundled
from .pv_quadrature import (hessian_boundary_integral,
                            hessian_boundary_integral_quadrature,
                            jet_boundary_average, pv_weighted_integral)
from .reduction import (C_SLOPE, KERNEL_DIMENSION, NEGATIVE_EIGENVALUE,
                        beta_curve, blowup_curves, gamma, gamma_derivatives,
                        spectrum)
from .sphere_geom import SpherePoint, make_frame

N_STARTS = 128  # enough for the bundled examples; the CLI default is 512

A2_EXACT = -224.0 / 9.0


def _flat_pair(analysis):
    """The two critical points at the +-X2 poles, sorted by the X2 sign."""
    pair = [inv for inv in analysis.invariants
            if abs(abs(inv.record.location.coords[1]) - 1.0) < 1e-9]
    assert len(pair) == 2, f"expected 2 polar critical points, got {len(pair)}"
    return sorted(pair, key=lambda inv: inv.record.location.coords[1])


def check_a2_anchor():
    """a2 = -224/9 at the flat pair, analytic to 1e-9 and quadrature to 1e-4."""
    t0 = time.time()
    spec = load_bundled("quadratic_3678").spec
    records = find_critical_points(spec, n_starts=N_STARTS)
    flats = [r for r in records if abs(abs(r.location.coords[1]) - 1.0) < 1e-9]
    assert len(flats) == 2
    worst = 0.0
    for rec in flats:
        a2 = compute_a2(spec, rec)
        assert abs(a2 - A2_EXACT) < 1e-9, f"a2 = {a2}, want {A2_EXACT}"
        frame = make_frame(rec.location, seed=0)
        q = jet_quantities(pullback_jet(spec, frame, (0.0, 0.0, 0.0)))
        quad = (q.value * compute_a1(spec, rec)
                - 15.0 / (8.0 * np.pi)
                * hessian_boundary_integral_quadrature(q.hessian_array))
        assert abs(quad - A2_EXACT) < 1e-4, f"quadrature a2 = {quad}"
        worst = max(worst, abs(a2 - A2_EXACT), abs(quad - A2_EXACT))
    dt = time.time() - t0
    assert dt < 1.0, f"runtime {dt:.2f}s exceeds 1s"
    return f"a2 within {worst:.2e} of -224/9, {dt:.2f}s"


def check_a0_a1_anchors():
    """a0 = 0 within 1e-5 and a1 = 0 within 1e-9 at the flat pair."""
    spec = load_bundled("quadratic_3678").spec
    records = find_critical_points(spec, n_starts=N_STARTS)
    flats = [r for r in records if abs(abs(r.location.coords[1]) - 1.0) < 1e-9]
    t0 = time.time()
    worst_a0 = worst_a1 = 0.0
    for rec in flats:
        a0 = compute_a0(spec, rec).value
        a1 = compute_a1(spec, rec)
        assert abs(a0) < 1e-5, f"a0 = {a0}"
        assert abs(a1) < 1e-9, f"a1 = {a1}"
        worst_a0 = max(worst_a0, abs(a0))
        worst_a1 = max(worst_a1, abs(a1))
    dt = time.time() - t0
    assert dt < 10.0, f"runtime {dt:.2f}s exceeds 10s"
    return f"|a0| <= {worst_a0:.2e}, |a1| <= {worst_a1:.2e}, {dt:.2f}s"


def check_perturbed_family():
    """a1 = 134.40 at s = 0.01; breakpoint 0.54 and degree switch at s = 0.001."""
    t0 = time.time()
    spec_l = load_bundled("quadratic_3678_perturbed_large").spec
    records = find_critical_points(spec_l, n_starts=N_STARTS)
    flats = [r for r in records if abs(abs(r.location.coords[1]) - 1.0) < 1e-9]
    for rec in flats:
        a1 = compute_a1(spec_l, rec)
        assert abs(a1 - 134.40) < 1e-6, f"a1 = {a1}, want 134.40"
    big_t = compute_T(spec_l, n_starts=N_STARTS)
    assert len(big_t) == 1 and abs(big_t[0] - 5.40) < 1e-6, f"T = {big_t}"
    rep_l = degree_profile(spec_l, n_starts=N_STARTS)
    assert rep_l.breakpoints == (), "breakpoint outside (0,1] must not split"
    assert len(rep_l.intervals) == 1

    spec_s = load_bundled("quadratic_3678_perturbed_small").spec
    small_t = compute_T(spec_s, n_starts=N_STARTS)
    assert len(small_t) == 1 and abs(small_t[0] - 0.54) < 1e-9, f"T = {small_t}"
    rep = degree_profile(spec_s, n_starts=N_STARTS)
    assert rep.breakpoints == (0.54,), f"breakpoints {rep.breakpoints}"
    (lo1, hi1, d1, s1), (lo2, hi2, d2, s2) = rep.intervals
    assert (d1, d2) == (1, -1), f"degrees ({d1}, {d2}), want (1, -1)"
    assert s1 and s2
    dt = time.time() - t0
    assert dt < 30.0, f"runtime {dt:.2f}s exceeds 30s"
    return f"a1 = 134.40, T = {{0.54}}, degrees (1, -1), {dt:.2f}s"


def check_degree_table():
    """The degree table 1 / -1 / -1 and the nondegenerate fallback behavior."""
    t0 = time.time()
    expected = {"quadratic_2678": 1, "quadratic_3678": -1, "quadratic_4678": -1}
    for name, want in expected.items():
        spec = load_bundled(name).spec
        d = degree_at(spec, 1.0, n_starts=N_STARTS)
        assert d == want, f"{name}: degree {d}, want {want}"
        if name == "quadratic_3678":
            try:
                nondegenerate_degree(spec, n_starts=N_STARTS)
            except NotNondegenerateError as exc:
                assert len(exc.offending) == 2
            else:
                raise AssertionError("flat pair must trip the nondegenerate count")
        else:
            assert nondegenerate_degree(spec, n_starts=N_STARTS) == want
    dt = time.time() - t0
    assert dt < 60.0, f"runtime {dt:.2f}s exceeds 60s"
    return f"degrees (1, -1, -1) with correct fallback, {dt:.2f}s"


def check_obstruction():
    """The monotone coordinate curvature: 2 critical points and degree 0."""
    spec = load_bundled("monotone_x1").spec
    records = find_critical_points(spec, n_starts=N_STARTS)
    assert len(records) == 2, f"{len(records)} critical points, want 2"
    d = degree_at(spec, 1.0, n_starts=N_STARTS)
    assert d == 0, f"degree {d}, want 0"
    return "2 critical points, degree 0"


def check_boundary_identity():
    """Boundary averages: (2 pi/3) laplacian at m = 2, zero at odd m."""
    rng = np.random.default_rng(3)
    worst_even = worst_odd = 0.0
    for _ in range(50):
        exps = [tuple(rng.integers(0, 3, size=4)) for _ in range(6)]
        coeffs = rng.standard_normal(6)
        base = AmbientPoly.diag_quadratic(3, 6, 7, 8) + AmbientPoly(
            tuple((e, 0.3 * c) for e, c in zip(exps, coeffs)))
        spec = CurvatureSpec(base=base)
        theta = SpherePoint(rng.standard_normal(4))
        frame = make_frame(theta, seed=int(rng.integers(0, 1000)))
        y = tuple(0.2 * rng.standard_normal(3))
        jet = pullback_jet(spec, frame, y)
        q = jet_quantities(jet)
        even = jet_boundary_average(jet, 2) - 2.0 * np.pi / 3.0 * q.laplacian
        assert abs(even) < 1e-12, f"m=2 identity off by {even}"
        worst_even = max(worst_even, abs(even))
        for m in (1, 3):
            odd = jet_boundary_average(jet, m)
            assert abs(odd) < 1e-14, f"m={m} average {odd}"
            worst_odd = max(worst_odd, abs(odd))
    return f"m=2 within {worst_even:.1e}, odd within {worst_odd:.1e} on 50 jets"


def check_spectrum():
    """The linearization eigenvalues and the fixed negative/kernel facts."""
    for n in range(2, 11):
        for i in range(n + 1):
            j = n - i
            want = 1.0 - 15.0 / ((4 + 2 * (n - 1)) ** 2 - 1)
            got = spectrum(i, j)
            assert abs(got - want) < 1e-15, f"spectrum({i},{j}) = {got}"
    assert NEGATIVE_EIGENVALUE == -4.0
    assert KERNEL_DIMENSION == 4
    return "eigenvalues exact for i+j = 2..10; negative -4, kernel dim 4"


def check_reduction():
    """beta decay, the gamma mu-derivative, and blow-up slopes and indices."""
    t0 = time.time()
    spec = load_bundled("quadratic_3678").spec
    theta = SpherePoint((0.0, 1.0, 0.0, 0.0))
    frame = make_frame(theta, seed=0)
    for mu in (1e-3, 3e-3, 1e-2):
        b = np.linalg.norm(beta_curve(spec, 1.0, 0.0, mu, frame))
        assert b < 10.0 * mu ** 3, f"|beta| = {b} at mu = {mu}"

    mu = 0.005
    dm = 1e-4
    fd = (gamma(spec, 1.0, 0.0, mu + dm, frame)
          - gamma(spec, 1.0, 0.0, mu - dm, frame)) / (2.0 * dm)
    _, closed = gamma_derivatives(spec, 1.0, 0.0, mu, frame)
    rel = abs(fd - closed) / abs(closed)
    assert rel < 0.05, f"d gamma/d mu off by {rel:.1%}"

    blow = load_bundled("quadratic_3678_blowup").spec
    grid = tuple(np.geomspace(1e-3, 5e-3, 4))
    curves = blowup_curves(blow, 0.3, n_starts=N_STARTS, mu_grid=grid)
    assert len(curves) == 2, f"{len(curves)} curves, want 2"
    for curve in curves:
        assert curve.slope > 0.0
        (m1, s1, _), (m2, s2, _) = curve.samples[0], curve.samples[1]
        fd_slope = (s2 - s1) / (m2 - m1)
        rel = abs(fd_slope - curve.slope) / abs(curve.slope)
        assert rel < 0.01, f"slope off by {rel:.2%}"
        base_rec = min(
            find_critical_points(load_bundled("quadratic_3678_perturbed_small").spec,
                                 n_starts=N_STARTS),
            key=lambda r: r.location.chordal_distance(curve.theta))
        assert curve.morse_index == 4 - base_rec.morse_index
    dt = time.time() - t0
    assert dt < 120.0, f"runtime {dt:.2f}s exceeds 120s"
    return f"beta decay, gamma slope within {rel:.2%}, 2 curves, {dt:.2f}s"


def _random_orthogonal(rng):
    q, r = np.linalg.qr(rng.standard_normal((4, 4)))
    return q * np.sign(np.diag(r))


def check_properties():
    """Frame independence, rotation equivariance, jet order, PV stability."""
    spec = load_bundled("quadratic_3678_perturbed_small").spec
    records = find_critical_points(spec, n_starts=N_STARTS)
    rec = max(records, key=lambda r: r.location.coords[1])
    vals = {}
    for fs in (1, 2):
        pv = compute_a0(spec, rec, frame_seed=fs)
        vals[fs] = (pv.value, pv.error_estimate,
                    compute_a1(spec, rec, frame_seed=fs),
                    compute_a2(spec, rec, frame_seed=fs))
    tol_a0 = 2.0 * (vals[1][1] + vals[2][1] + 1e-9)
    assert abs(vals[1][0] - vals[2][0]) < tol_a0, "a0 frame-dependent"
    assert abs(vals[1][2] - vals[2][2]) < 2e-9, "a1 frame-dependent"
    assert abs(vals[1][3] - vals[2][3]) < 2e-9, "a2 frame-dependent"

    base_spec = load_bundled("quadratic_2678").spec
    base = analyze(base_spec, n_starts=N_STARTS)
    rng = np.random.default_rng(11)
    for _ in range(10):
        q = _random_orthogonal(rng)
        rot = analyze(CurvatureSpec(base=base_spec.base.rotated(q)),
                      n_starts=N_STARTS)
        assert len(rot.invariants) == len(base.invariants)
        for inv in base.invariants:
            target = SpherePoint(q @ inv.record.location.array)
            match = min(rot.invariants,
                        key=lambda r: r.record.location.chordal_distance(target))
            assert match.record.location.chordal_distance(target) < 1e-8
            assert match.record.morse_index == inv.record.morse_index
            tol = 2.0 * (inv.a0_error + match.a0_error) + 1e-6
            assert abs(match.a0 - inv.a0) < tol, "a0 not equivariant"
            assert abs(match.a1 - inv.a1) < 1e-6 * max(1.0, abs(inv.a1))
            assert abs(match.a2 - inv.a2) < 1e-6 * max(1.0, abs(inv.a2))

    frame = make_frame(SpherePoint((0.0, 1.0, 0.0, 0.0)), seed=0)
    jet = pullback_jet(spec, frame, (0.05, -0.02, 0.03))
    u = np.array([0.4, -0.7, 0.59])
    u /= np.linalg.norm(u)
    hs = np.geomspace(0.03, 0.12, 6)
    errs = []
    for h in hs:
        pred = float(np.asarray(jet.evaluate(h * u)).reshape(-1)[0])
        direct = float(chart_k_values(spec, frame,
                                      np.array([0.05, -0.02, 0.03])
                                      + h * u[None, :])[0])
        errs.append(abs(pred - direct))
    slope = float(np.polyfit(np.log(hs), np.log(errs), 1)[0])
    assert slope >= 4.8, f"jet truncation order {slope:.2f} < 4.8"

    for theta in (SpherePoint((0.0, 1.0, 0.0, 0.0)), SpherePoint((0.0, 0.0, 1.0, 0.0))):
        fr = make_frame(theta, seed=0)
        coarse = pv_weighted_integral(spec, fr, (0.0, 0.0, 0.0), 2, 6, r_switch=0.1)
        fine = pv_weighted_integral(spec, fr, (0.0, 0.0, 0.0), 2, 6, r_switch=0.05)
        bound = 2.0 * max(coarse.error_estimate, fine.error_estimate)
        assert abs(coarse.value - fine.value) < bound, "PV refinement unstable"
    return f"frames, 10 rotations, jet order {slope:.2f}, PV refinement stable"


ACCEPTANCE_CHECKS = (
    ("a2_anchor", check_a2_anchor),
    ("a0_a1_anchors", check_a0_a1_anchors),
    ("perturbed_family", check_perturbed_family),
    ("degree_table", check_degree_table),
    ("obstruction", check_obstruction),
    ("boundary_identity", check_boundary_identity),
    ("spectrum", check_spectrum),
    ("reduction", check_reduction),
    ("property_suites", check_properties),
)


def run_all(out=print):
    """Run every acceptance check; returns the number of failures."""
    failures = 0
    for name, check in ACCEPTANCE_CHECKS:
        try:
            detail = check()
        except AssertionError as exc:
            failures += 1
            out(f"FAIL {name}: {exc}")
        else:
            out(f"PASS {name}: {detail}")
    return failures
