import numpy as np
import pytest

from curvdeg import AmbientPoly, BumpFunction, CurvatureSpec, load_bundled

N_STARTS = 128  # plenty for the bundled examples and much faster than 512


@pytest.fixture(scope="session")
def quad_neg():
    """Diagonal quadratic whose polar pair has negative Laplacian."""
    return load_bundled("quadratic_2678").spec


@pytest.fixture(scope="session")
def quad_flat():
    """Diagonal quadratic with a vanishing Laplacian at the polar pair."""
    return load_bundled("quadratic_3678").spec


@pytest.fixture(scope="session")
def quad_pos():
    return load_bundled("quadratic_4678").spec


@pytest.fixture(scope="session")
def monotone():
    return load_bundled("monotone_x1").spec


@pytest.fixture(scope="session")
def perturbed_small():
    return load_bundled("quadratic_3678_perturbed_small").spec


@pytest.fixture(scope="session")
def perturbed_large():
    return load_bundled("quadratic_3678_perturbed_large").spec


@pytest.fixture(scope="session")
def blowup_spec():
    return load_bundled("quadratic_3678_blowup").spec


@pytest.fixture(scope="session")
def bump_plus():
    return load_bundled("quadratic_3678_bump_plus").spec


@pytest.fixture(scope="session")
def bump_minus():
    return load_bundled("quadratic_3678_bump_minus").spec


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_orthogonal(rng):
    q, r = np.linalg.qr(rng.standard_normal((4, 4)))
    return q * np.sign(np.diag(r))
