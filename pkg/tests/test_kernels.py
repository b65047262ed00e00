import numpy as np
import pytest

from curvdeg import _kernels_py
from curvdeg.backend import BACKEND, available_backends, chart_points, eval_poly

cython_kernels = pytest.importorskip("curvdeg._kernels", reason="extension not built")


def _random_case(rng, n=500, terms=25):
    powers = rng.integers(0, 6, size=(terms, 4)).astype(np.int64)
    coeffs = rng.standard_normal(terms)
    pts = rng.standard_normal((n, 4))
    return powers, coeffs, pts


def test_backends_agree_on_eval_poly(rng):
    for _ in range(5):
        powers, coeffs, pts = _random_case(rng)
        ref = _kernels_py.eval_poly(powers, coeffs, pts)
        alt = cython_kernels.eval_poly(powers, coeffs, pts)
        scale = np.max(np.abs(ref)) + 1.0
        assert np.max(np.abs(ref - alt)) < 1e-12 * scale


def test_backends_agree_on_chart_points(rng):
    basis = np.linalg.qr(rng.standard_normal((4, 4)))[0]
    pts3 = rng.standard_normal((200, 3))
    ref = _kernels_py.chart_points(basis, pts3)
    alt = cython_kernels.chart_points(basis, pts3)
    assert np.max(np.abs(ref - alt)) < 1e-14


def test_chart_points_formula(rng):
    basis = np.linalg.qr(rng.standard_normal((4, 4)))[0]
    x = rng.standard_normal(3)
    out = chart_points(basis, x[None, :])[0]
    n2 = float(x @ x)
    want = (2.0 * x @ basis[:3] + (1.0 - n2) * basis[3]) / (1.0 + n2)
    assert np.allclose(out, want, atol=1e-14)
    assert abs(np.linalg.norm(out) - 1.0) < 1e-12  # lands on the sphere


def test_eval_poly_simple():
    powers = np.array([[2, 0, 0, 0], [0, 1, 1, 0]], dtype=np.int64)
    coeffs = np.array([3.0, -1.0])
    pts = np.array([[2.0, 1.0, 5.0, 0.0]])
    assert eval_poly(powers, coeffs, pts)[0] == pytest.approx(3 * 4 - 5)


def test_active_backend_is_compiled():
    assert BACKEND == "cython"
    assert set(available_backends()) == {"python", "cython"}
