import numpy as np
import pytest

from curvdeg import (BreakpointError, NotNondegenerateError, degree_at,
                     degree_profile, nondegenerate_degree)
from conftest import N_STARTS


def test_degree_table(quad_neg, quad_flat, quad_pos, monotone):
    assert degree_at(quad_neg, 1.0, n_starts=N_STARTS) == 1
    assert degree_at(quad_flat, 1.0, n_starts=N_STARTS) == -1
    assert degree_at(quad_pos, 1.0, n_starts=N_STARTS) == -1
    assert degree_at(monotone, 1.0, n_starts=N_STARTS) == 0


def test_degree_domain(quad_neg):
    with pytest.raises(ValueError):
        degree_at(quad_neg, 0.0, n_starts=N_STARTS)
    with pytest.raises(ValueError):
        degree_at(quad_neg, 1.5, n_starts=N_STARTS)


def test_breakpoint_rejected(perturbed_small):
    with pytest.raises(BreakpointError):
        degree_at(perturbed_small, 0.54, n_starts=N_STARTS)
    assert degree_at(perturbed_small, 0.54 + 1e-6, n_starts=N_STARTS) == -1


def test_profile_single_interval(quad_pos):
    rep = degree_profile(quad_pos, n_starts=N_STARTS)
    assert rep.breakpoints == ()
    assert rep.intervals == ((0.0, 1.0, -1, True),)
    assert rep.excluded_t == ()


def test_profile_split(perturbed_small):
    rep = degree_profile(perturbed_small, n_starts=N_STARTS)
    assert rep.breakpoints == (0.54,)
    (lo1, hi1, d1, s1), (lo2, hi2, d2, s2) = rep.intervals
    assert (lo1, hi1, d1, s1) == (0.0, 0.54, 1, True)
    assert (lo2, hi2, d2, s2) == (0.54, 1.0, -1, True)
    # membership table has one column per interval
    for _, _, row in rep.per_point:
        assert len(row) == 2


def test_profile_degree_jump_accounting(perturbed_small):
    # two index-1 points leave the negative set across the breakpoint,
    # so the degree jumps by 2 * (-1)^1 * (-1) = 2
    rep = degree_profile(perturbed_small, n_starts=N_STARTS)
    (_, _, d_lo, _), (_, _, d_hi, _) = rep.intervals
    flips = sum(1 for _, inv, row in rep.per_point if row[0] != row[1])
    assert flips == 2
    assert d_lo - d_hi == 2


def test_bump_profiles(bump_plus, bump_minus):
    rep_p = degree_profile(bump_plus, n_starts=N_STARTS)
    rep_m = degree_profile(bump_minus, n_starts=N_STARTS)
    assert rep_p.intervals == ((0.0, 1.0, -1, True),)
    assert rep_m.intervals == ((0.0, 1.0, 1, True),)


def test_nondegenerate_degree(quad_neg, quad_flat, quad_pos, monotone):
    assert nondegenerate_degree(quad_neg, n_starts=N_STARTS) == 1
    assert nondegenerate_degree(quad_pos, n_starts=N_STARTS) == -1
    assert nondegenerate_degree(monotone, n_starts=N_STARTS) == 0
    with pytest.raises(NotNondegenerateError) as info:
        nondegenerate_degree(quad_flat, n_starts=N_STARTS)
    assert len(info.value.offending) == 2


def test_nondegenerate_consistency(quad_neg, rng):
    d = nondegenerate_degree(quad_neg, n_starts=N_STARTS)
    for t in rng.uniform(1e-3, 1.0, size=10):
        assert degree_at(quad_neg, float(t), n_starts=N_STARTS) == d
