"""Points on S^3, orthonormal chart frames, and the stereographic chart.

Convention: sigma_theta(x) = (2 sum x_i e_i + (1-|x|^2) theta) / (1+|x|^2),
so sigma_theta(0) = theta, |x| -> infinity tends to -theta, and the pullback
of the round metric is conformal with factor 4/(1+|x|^2)^2.
"""

from dataclasses import dataclass

import numpy as np

from .errors import AntipodeError

_ORTHO_TOL = 1e-12


@dataclass(frozen=True)
class SpherePoint:
    """A point of the unit sphere in R^4; renormalized on construction."""

    coords: tuple

    def __init__(self, coords):
        v = np.asarray(coords, dtype=np.float64)
        n = np.linalg.norm(v)
        if n == 0.0 or not np.isfinite(n):
            raise ValueError("cannot normalize zero or non-finite vector")
        if abs(n - 1.0) > 1e-9:  # keep near-unit input verbatim (exact round-trips)
            v = v / n
        object.__setattr__(self, "coords", tuple(float(c) for c in v))

    @property
    def array(self):
        return np.array(self.coords)

    def chordal_distance(self, other):
        return float(np.linalg.norm(self.array - other.array))


@dataclass(frozen=True)
class ChartFrame:
    """Chart center theta plus an orthonormal tangent triple (e1, e2, e3)."""

    base: SpherePoint
    tangent: tuple  # three 4-tuples

    def __post_init__(self):
        g = self.basis @ self.basis.T
        if np.max(np.abs(g - np.eye(4))) > 1e-10:
            raise ValueError("frame is not orthonormal")

    @property
    def basis(self):
        """Rows e1, e2, e3, theta as a (4, 4) array (kernel layout)."""
        return np.array([*self.tangent, self.base.coords])


def make_frame(theta, seed=0):
    """Deterministic orthonormal tangent frame at theta via Gram-Schmidt."""
    rng = np.random.default_rng(seed)
    t = theta.array
    vecs = []
    while len(vecs) < 3:
        v = rng.standard_normal(4)
        v -= (v @ t) * t
        for u in vecs:
            v -= (v @ u) * u
        n = np.linalg.norm(v)
        if n < 1e-6:  # degenerate draw; redraw deterministically
            continue
        vecs.append(v / n)
    return ChartFrame(theta, tuple(tuple(v) for v in vecs))


def stereo_to_sphere(frame, x):
    """sigma_theta(x) for a single chart point x in R^3."""
    x = np.asarray(x, dtype=np.float64)
    n2 = float(x @ x)
    b = frame.basis
    v = 2.0 * x @ b[:3] + (1.0 - n2) * b[3]
    return SpherePoint(v / (1.0 + n2))


def sphere_to_stereo(frame, point):
    """Inverse chart; raises AntipodeError at (numerically) -theta."""
    p = point.array
    b = frame.basis
    c = float(p @ b[3])
    if c < -1.0 + 1e-12:
        raise AntipodeError("point is antipodal to the chart center")
    return p @ b[:3].T / (1.0 + c)


def conformal_weight(x):
    """3^(1/4) (1+|x|^2)^(-1/2), the conformal transformation weight."""
    x = np.asarray(x, dtype=np.float64)
    n2 = x @ x if x.ndim == 1 else np.einsum("ij,ij->i", x, x)
    return 3.0 ** 0.25 / np.sqrt(1.0 + n2)
