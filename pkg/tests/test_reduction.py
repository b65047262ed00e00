import csv

import numpy as np
import pytest

from curvdeg import (AmbientPoly, CurvatureSpec, DomainError, NoContractionError,
                     SpherePoint, alpha_terms, beta_curve, blowup_curves,
                     bubble_eval, bump_weight_integral, gamma,
                     gamma_derivatives, jet_quantities, make_frame,
                     pullback_jet, spectrum)
from curvdeg.reduction import (Bubble, curves_to_csv, KERNEL_DIMENSION,
                               NEGATIVE_EIGENVALUE,
                               NEGATIVE_EIGENVALUE_MULTIPLICITY)
from conftest import N_STARTS

E2 = SpherePoint((0.0, 1.0, 0.0, 0.0))


def test_constant_prefactors_pinned():
    from curvdeg import reduction
    pins = {
        "C_GRAD": 1.06754098355,
        "C_GRAD_LAP": 0.533770491774,
        "C_PV6": 1.29797419248,
        "C_PV8": 2.59594838495,
        "C_BILAP": 0.533770491774,
        "C_BOUNDARY": 0.318570795909,
        "C_GAMMA": 0.770431342777,
        "C_SLOPE": 0.411233516712,
        "C_ALPHA_HAT": 0.936732186784,
    }
    for name, want in pins.items():
        got = getattr(reduction, name)
        assert abs(got - want) < 5e-12 * want, f"{name} = {got!r}"


def test_bubble_values_and_scaling(rng):
    assert bubble_eval(Bubble(1.0, (0, 0, 0)), (0.0, 0.0, 0.0)) == pytest.approx(
        3.0 ** 0.25)
    assert bubble_eval(Bubble(1.0, (0, 0, 0)), (1.0, 0.0, 0.0)) == pytest.approx(
        3.0 ** 0.25 / np.sqrt(2.0))
    for _ in range(50):
        x = rng.standard_normal(3)
        lhs = bubble_eval(Bubble(2.0, (0, 0, 0)), 2.0 * x)
        rhs = 2.0 ** -0.5 * bubble_eval(Bubble(1.0, (0, 0, 0)), x)
        assert lhs == pytest.approx(rhs, rel=1e-14)
    with pytest.raises(ValueError):
        Bubble(-0.1, (0, 0, 0))


def test_alpha_structure_at_flat_point(quad_flat):
    frame = make_frame(E2, seed=0)
    a = alpha_terms(quad_flat, 1.0, 0.0, Bubble(0.01, (0.0, 0.0, 0.0)), frame)
    assert a.alpha1 == (0.0, 0.0, 0.0, 0.0)  # gradient vanishes
    assert a.alpha2[0] == pytest.approx(0.0, abs=1e-16)  # laplacian vanishes
    assert a.alpha2[1:] == (0.0, 0.0, 0.0)
    assert np.allclose(a.alpha3[1:], 0.0, atol=1e-14)  # grad-laplacian vanishes
    assert abs(a.alpha3[0]) < 1e-16  # a0 = 0 makes the PV piece vanish
    assert a.alpha4[0] != 0.0


def test_alpha_mu_component_reproduces_invariants(quad_flat):
    # the mu-component at the flat point reduces to the a1 + t0 a2 combination
    t0, mu = 1.0, 0.01
    frame = make_frame(E2, seed=0)
    a = alpha_terms(quad_flat, t0, 0.0, Bubble(mu, (0.0, 0.0, 0.0)), frame)
    total0 = float(a.total[0])
    from curvdeg.reduction import C_GAMMA
    gamma_val = -(1.0 + 0.0) ** 1.25 * C_GAMMA / (t0 * mu ** 3) * total0
    want = -mu * np.pi ** 2 / 24.0 * (-224.0 / 9.0)
    assert gamma_val == pytest.approx(want, rel=1e-2)


def test_beta_cubic_decay(quad_flat):
    frame = make_frame(E2, seed=0)
    for mu in (1e-3, 3e-3, 1e-2):
        b = np.linalg.norm(beta_curve(quad_flat, 1.0, 0.0, mu, frame))
        assert b < 10.0 * mu ** 3


def test_beta_leading_term():
    base = AmbientPoly.diag_quadratic(3, 6, 7, 8) + AmbientPoly((((3, 0, 0, 0), 0.05),))
    spec = CurvatureSpec(base=base)
    frame = make_frame(E2, seed=0)
    q = jet_quantities(pullback_jet(spec, frame, (0.0, 0.0, 0.0)))
    lead = -0.5 * np.linalg.solve(q.hessian_array, q.grad_laplacian_array)
    errs = []
    for mu in (0.01, 0.005, 0.0025):
        b = np.array(beta_curve(spec, 1.0, 0.0, mu, frame))
        errs.append(np.linalg.norm(b / mu ** 2 - lead) / np.linalg.norm(lead))
    assert errs[0] < 0.01
    # Richardson order of the remainder is at least 1
    order = np.log2(errs[0] / errs[1])
    assert order >= 1.0


def test_beta_locality(blowup_spec):
    # h is supported away from the center, so s cannot move beta
    frame = make_frame(E2, seed=0)
    b0 = np.array(beta_curve(blowup_spec, 0.3, 0.0, 0.005, frame))
    b1 = np.array(beta_curve(blowup_spec, 0.3, 0.8, 0.005, frame))
    assert np.linalg.norm(b0 - b1) < 1e-10


def test_beta_requires_flat_center(quad_neg):
    frame = make_frame(E2, seed=0)
    with pytest.raises(DomainError):
        beta_curve(quad_neg, 1.0, 0.0, 0.01, frame)
    with pytest.raises(DomainError):
        beta_curve(quad_neg, 1.0, 0.0, 0.2, frame)


def test_gamma_slope_identity(quad_flat):
    frame = make_frame(E2, seed=0)
    want = -np.pi ** 2 / 24.0 * (-224.0 / 9.0)
    for mu in (0.02, 0.005):
        assert gamma(quad_flat, 1.0, 0.0, mu, frame) / mu == pytest.approx(
            want, rel=1e-9)


def test_gamma_derivatives_closed_forms(blowup_spec):
    frame = make_frame(E2, seed=0)
    mu, dm, ds = 0.005, 1e-4, 1e-3
    d_s, d_mu = gamma_derivatives(blowup_spec, 0.3, 0.0, mu, frame)
    fd_mu = (gamma(blowup_spec, 0.3, 0.0, mu + dm, frame)
             - gamma(blowup_spec, 0.3, 0.0, mu - dm, frame)) / (2.0 * dm)
    assert fd_mu == pytest.approx(d_mu, rel=0.05)
    fd_s = (gamma(blowup_spec, 0.3, ds, mu, frame)
            - gamma(blowup_spec, 0.3, -0.0, mu, frame)) / ds
    assert fd_s == pytest.approx(d_s, rel=0.05)
    h_int = bump_weight_integral(blowup_spec, frame)
    assert d_s == pytest.approx(h_int.value, rel=1e-9)


def test_blowup_curves(blowup_spec):
    grid = tuple(np.geomspace(1e-3, 5e-3, 4))
    curves = blowup_curves(blowup_spec, 0.3, n_starts=N_STARTS, mu_grid=grid)
    assert len(curves) == 2
    for curve in curves:
        assert curve.slope > 0.0
        assert curve.morse_index == 3  # 4 minus the index-1 saddle
        mus = [m for m, _, _ in curve.samples]
        ss = [s for _, s, _ in curve.samples]
        assert mus == sorted(mus)
        assert all(s > 0.0 for s in ss)
        fd = (ss[1] - ss[0]) / (mus[1] - mus[0])
        assert fd == pytest.approx(curve.slope, rel=0.01)


def test_blowup_empty_m_star(quad_flat, bump_plus):
    # a1 + t0 a2 < 0 at the flat pair, so M* is empty
    curves = blowup_curves(bump_plus, 1.0, n_starts=N_STARTS,
                           mu_grid=(1e-3,))
    assert curves == []
    with pytest.raises(DomainError):
        blowup_curves(quad_flat, 1.0, n_starts=N_STARTS)  # no bump h


def test_spectrum_values_and_monotonicity():
    assert spectrum(1, 1) == pytest.approx(4.0 / 7.0, abs=1e-15)
    prev = -np.inf
    for n in range(2, 30):
        val = spectrum(n, 0)
        assert val == spectrum(0, n)
        assert prev < val < 1.0
        prev = val
    assert NEGATIVE_EIGENVALUE == -4.0
    assert NEGATIVE_EIGENVALUE_MULTIPLICITY == 1
    assert KERNEL_DIMENSION == 4
    with pytest.raises(DomainError):
        spectrum(1, 0)
    with pytest.raises(DomainError):
        spectrum(-1, 4)


def test_curves_csv_schema(blowup_spec, tmp_path):
    grid = (1e-3, 2e-3)
    curves = blowup_curves(blowup_spec, 0.3, n_starts=N_STARTS, mu_grid=grid)
    path = tmp_path / "curves.csv"
    curves_to_csv(curves, path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["theta_index", "mu", "s", "y1", "y2", "y3",
                       "slope", "morse_index"]
    assert len(rows) == 1 + len(curves) * len(grid)
    assert float(rows[1][1]) == pytest.approx(1e-3)
