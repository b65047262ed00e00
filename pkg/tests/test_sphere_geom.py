import numpy as np
import pytest

from curvdeg import AntipodeError, ChartFrame, SpherePoint, make_frame
from curvdeg.sphere_geom import (conformal_weight, sphere_to_stereo,
                                 stereo_to_sphere)


def test_point_normalization():
    p = SpherePoint((3.0, 0.0, 4.0, 0.0))
    assert np.allclose(p.array, [0.6, 0.0, 0.8, 0.0])
    with pytest.raises(ValueError):
        SpherePoint((0.0, 0.0, 0.0, 0.0))


def test_unit_input_kept_verbatim():
    coords = (0.0, 1.0, 0.0, 0.0)
    assert SpherePoint(coords).coords == coords


def test_chordal_distance():
    a = SpherePoint((1.0, 0.0, 0.0, 0.0))
    b = SpherePoint((-1.0, 0.0, 0.0, 0.0))
    assert a.chordal_distance(b) == pytest.approx(2.0)


def test_make_frame_orthonormal(rng):
    for seed in range(5):
        theta = SpherePoint(rng.standard_normal(4))
        frame = make_frame(theta, seed=seed)
        basis = frame.basis
        assert np.allclose(basis @ basis.T, np.eye(4), atol=1e-12)
        assert np.allclose(basis[3], theta.array)


def test_frame_rejects_skewed_basis():
    theta = SpherePoint((0.0, 0.0, 0.0, 1.0))
    with pytest.raises(ValueError):
        ChartFrame(theta, ((1.0, 0.1, 0.0, 0.0),
                           (0.0, 1.0, 0.0, 0.0),
                           (0.0, 0.0, 1.0, 0.0)))


def test_chart_center_and_roundtrip(rng):
    theta = SpherePoint(rng.standard_normal(4))
    frame = make_frame(theta, seed=0)
    assert stereo_to_sphere(frame, np.zeros(3)).chordal_distance(theta) < 1e-15
    for _ in range(10):
        x = rng.standard_normal(3)
        back = sphere_to_stereo(frame, stereo_to_sphere(frame, x))
        assert np.allclose(back, x, atol=1e-12)


def test_antipode_raises():
    theta = SpherePoint((0.0, 1.0, 0.0, 0.0))
    frame = make_frame(theta, seed=0)
    with pytest.raises(AntipodeError):
        sphere_to_stereo(frame, SpherePoint((0.0, -1.0, 0.0, 0.0)))


def test_conformal_weight_values():
    assert conformal_weight(np.zeros(3)) == pytest.approx(3.0 ** 0.25)
    assert conformal_weight(np.array([1.0, 0.0, 0.0])) == pytest.approx(
        3.0 ** 0.25 / np.sqrt(2.0))
