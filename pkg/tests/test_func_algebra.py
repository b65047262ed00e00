import numpy as np
import pytest

from curvdeg import (AmbientPoly, BumpFunction, CurvatureSpec, SpherePoint,
                     jet_quantities, make_frame, pullback_jet)
from curvdeg.func_algebra import (chart_k_values, evaluate, k_value,
                                  positivity_margin)
from curvdeg.sphere_geom import stereo_to_sphere
from conftest import random_orthogonal

E2 = SpherePoint((0.0, 1.0, 0.0, 0.0))
E4 = SpherePoint((0.0, 0.0, 0.0, 1.0))


def _fd_hessian(f, h=1e-4):
    """5-point central finite differences of a chart function at the origin."""
    hess = np.zeros((3, 3))
    eye = np.eye(3)
    for i in range(3):
        vals = [f(c * h * eye[i]) for c in (-2, -1, 1, 2)]
        hess[i, i] = (-vals[0] + 16 * vals[1] + 16 * vals[2] - vals[3]
                      - 30 * f(np.zeros(3))) / (12 * h * h)
    for i in range(3):
        for j in range(i + 1, 3):
            acc = 0.0
            for si in (-1, 1):
                for sj in (-1, 1):
                    acc += si * sj * f(h * (si * eye[i] + sj * eye[j]))
            hess[i, j] = hess[j, i] = acc / (4 * h * h)
    return hess


def test_poly_evaluate_and_add(rng):
    p = AmbientPoly.diag_quadratic(3, 6, 7, 8)
    x = rng.standard_normal((5, 4))
    want = 3 * x[:, 0] ** 2 + 6 * x[:, 1] ** 2 + 7 * x[:, 2] ** 2 + 8 * x[:, 3] ** 2
    assert np.allclose(p.evaluate(x), want)
    q = p + p.scaled(-1.0)
    assert np.allclose(q.evaluate(x), 0.0)


def test_poly_rotation(rng):
    p = AmbientPoly((((3, 0, 0, 0), 1.0), ((1, 1, 1, 0), -2.0)))
    q = random_orthogonal(rng)
    rotated = p.rotated(q)
    x = rng.standard_normal((20, 4))
    assert np.allclose(rotated.evaluate(x), p.evaluate(x @ q), atol=1e-12)


def test_value_anchors(quad_neg, quad_flat):
    assert evaluate(quad_neg, E4) == pytest.approx(8.0)
    assert evaluate(quad_flat, E2) == pytest.approx(6.0)
    assert k_value(quad_flat, E2) == pytest.approx(0.0, abs=1e-15)


def test_bump_support_and_sign():
    b = BumpFunction(center=(1.0, 0.0, 0.0, 0.0), radius=0.5, amplitude=2.0)
    assert b.evaluate(np.array([[1.0, 0.0, 0.0, 0.0]]))[0] == pytest.approx(2.0)
    far = np.array([[0.0, 1.0, 0.0, 0.0]])
    assert b.evaluate(far)[0] == 0.0
    assert b.clearance(SpherePoint((0.0, 1.0, 0.0, 0.0))) > 0.0
    neg = BumpFunction(center=(1.0, 0.0, 0.0, 0.0), radius=0.5, amplitude=-1.0)
    assert neg.evaluate(np.array([[1.0, 0.0, 0.0, 0.0]]))[0] < 0.0
    with pytest.raises(ValueError):
        BumpFunction(center=(1.0, 0.0, 0.0, 0.0), radius=-0.1, amplitude=1.0)


def test_positivity_margin(quad_flat, monotone):
    assert positivity_margin(quad_flat) > 0.0
    assert positivity_margin(monotone) > 0.0


def test_flat_point_jet_anchors(quad_flat):
    frame = make_frame(E2, seed=0)
    q = jet_quantities(pullback_jet(quad_flat, frame, (0.0, 0.0, 0.0)))
    assert np.allclose(q.gradient_array, 0.0, atol=1e-14)
    eigs = np.sort(np.linalg.eigvalsh(q.hessian_array))
    assert np.allclose(eigs, [-4.0, 4.0 / 3.0, 8.0 / 3.0], atol=1e-12)
    assert q.laplacian == pytest.approx(0.0, abs=1e-13)
    assert q.bilaplacian == pytest.approx(0.0, abs=1e-10)
    assert np.allclose(q.grad_laplacian_array, 0.0, atol=1e-12)


def test_jet_hessian_matches_fd_oracle(quad_flat):
    frame = make_frame(E2, seed=0)
    jet_h = jet_quantities(pullback_jet(quad_flat, frame, (0.0, 0.0, 0.0))).hessian_array

    def f(x):
        return float(chart_k_values(quad_flat, frame, x[None, :])[0])

    assert np.allclose(jet_h, _fd_hessian(f), atol=1e-6)


def test_jet_evaluate_matches_direct(perturbed_small, rng):
    theta = SpherePoint(rng.standard_normal(4))
    frame = make_frame(theta, seed=3)
    y = 0.3 * rng.standard_normal(3)
    jet = pullback_jet(perturbed_small, frame, tuple(y))
    for _ in range(5):
        d = 0.02 * rng.standard_normal(3)
        pred = float(np.asarray(jet.evaluate(d)).reshape(-1)[0])
        direct = float(chart_k_values(perturbed_small, frame, (y + d)[None, :])[0])
        assert abs(pred - direct) < 1e-8


def test_perturbed_a1_jet_value(perturbed_large):
    # the quartic chart coefficient of the perturbation drives the bilaplacian
    frame = make_frame(E2, seed=0)
    q = jet_quantities(pullback_jet(perturbed_large, frame, (0.0, 0.0, 0.0)))
    assert q.bilaplacian == pytest.approx(134.40, abs=1e-9)


def test_bump_jet_vanishes_off_support(bump_plus):
    frame = make_frame(E2, seed=0)
    with_bump = pullback_jet(bump_plus, frame, (0.0, 0.0, 0.0))
    without = pullback_jet(bump_plus, frame, (0.0, 0.0, 0.0), bump_scale=0.0)
    assert with_bump.coeffs == without.coeffs


def test_spec_validation(quad_flat):
    with pytest.raises(ValueError):
        CurvatureSpec(base=quad_flat.base, s=-0.5)
    with pytest.raises(ValueError):
        AmbientPoly((((1, 2), 1.0),))


def test_chart_values_equal_sphere_values(quad_flat, rng):
    frame = make_frame(SpherePoint(rng.standard_normal(4)), seed=1)
    pts3 = rng.standard_normal((10, 3))
    chart_vals = chart_k_values(quad_flat, frame, pts3)
    for x, v in zip(pts3, chart_vals):
        assert v == pytest.approx(k_value(quad_flat, stereo_to_sphere(frame, x)),
                                  abs=1e-13)
