import numpy as np
import pytest

from curvdeg import (AmbientPoly, CurvatureSpec, DegenerateFunctionError,
                     SpherePoint, classify_table, find_critical_points)
from conftest import N_STARTS, random_orthogonal


def _vertex_set(records):
    return {tuple(int(round(c)) for c in r.location.coords) for r in records}


def test_quadratic_critical_points_are_vertices(quad_neg):
    records = find_critical_points(quad_neg, n_starts=N_STARTS)
    assert len(records) == 8
    want = set()
    for i in range(4):
        e = [0, 0, 0, 0]
        e[i] = 1
        want.add(tuple(e))
        e[i] = -1
        want.add(tuple(e))
    assert _vertex_set(records) == want
    for r in records:
        assert r.grad_norm < 1e-10
        assert r.nondegenerate


def test_morse_indices_and_laplacian_signs(quad_neg, quad_flat, quad_pos):
    # the polar pair (second coordinate +-1) distinguishes the three cases
    for spec, want_sign in ((quad_neg, -1), (quad_flat, 0), (quad_pos, 1)):
        table = classify_table(spec, n_starts=N_STARTS)
        rows = [row for row in table
                if abs(abs(row[0].coords[1]) - 1.0) < 1e-9]
        assert len(rows) == 2
        for _, sign, index in rows:
            assert sign == want_sign
            assert index == 1


def test_index_spectrum_of_quadratic(quad_neg):
    counts = {}
    for r in find_critical_points(quad_neg, n_starts=N_STARTS):
        counts[r.morse_index] = counts.get(r.morse_index, 0) + 1
    assert counts == {0: 2, 1: 2, 2: 2, 3: 2}


def test_monotone_has_two_critical_points(monotone):
    records = find_critical_points(monotone, n_starts=N_STARTS)
    assert len(records) == 2
    indices = sorted(r.morse_index for r in records)
    assert indices == [0, 3]


def test_constant_curvature_is_degenerate():
    spec = CurvatureSpec(base=AmbientPoly((((0, 0, 0, 0), 7.0),)))
    with pytest.raises(DegenerateFunctionError):
        find_critical_points(spec, n_starts=N_STARTS)


def test_rotation_equivariance(quad_neg, rng):
    base = find_critical_points(quad_neg, n_starts=N_STARTS)
    q = random_orthogonal(rng)
    rotated = find_critical_points(CurvatureSpec(base=quad_neg.base.rotated(q)),
                                   n_starts=N_STARTS)
    assert len(rotated) == len(base)
    for r in base:
        target = SpherePoint(q @ r.location.array)
        match = min(rotated, key=lambda s: s.location.chordal_distance(target))
        assert match.location.chordal_distance(target) < 1e-8
        assert match.morse_index == r.morse_index
        assert match.laplacian == pytest.approx(r.laplacian, abs=1e-7)


def test_seed_independence(quad_flat):
    a = find_critical_points(quad_flat, n_starts=N_STARTS, seed=0)
    b = find_critical_points(quad_flat, n_starts=N_STARTS, seed=1)
    assert _vertex_set(a) == _vertex_set(b)


def test_too_few_starts_rejected(quad_flat):
    with pytest.raises(ValueError):
        find_critical_points(quad_flat, n_starts=8)


def test_bump_spec_keeps_vertices(bump_plus):
    records = find_critical_points(bump_plus, n_starts=N_STARTS)
    assert len(records) == 8
    assert _vertex_set(records) == _vertex_set(
        find_critical_points(CurvatureSpec(base=bump_plus.base),
                             n_starts=N_STARTS))
