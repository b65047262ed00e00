"""Sparse multivariate polynomial arithmetic on exponent-tuple dicts.

Polynomials are ``{(p1, ..., pk): coeff}`` dicts.  Used for exact chart
pullbacks and truncated power-series division; the hot evaluation path is
delegated to the kernel backend.
"""

from itertools import product
from math import comb

import numpy as np

from .backend import eval_poly

_PRUNE_EPS = 0.0  # keep exact zeros out, nothing else


def p_prune(a):
    return {e: c for e, c in a.items() if c != _PRUNE_EPS}


def p_add(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0.0) + c
    return p_prune(out)


def p_scale(a, s):
    if s == 0.0:
        return {}
    return {e: c * s for e, c in a.items()}


def p_mul(a, b, max_deg=None):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if max_deg is not None and sum(e) > max_deg:
                continue
            out[e] = out.get(e, 0.0) + ca * cb
    return p_prune(out)


def p_pow(a, n, max_deg=None):
    if n == 0:
        k = len(next(iter(a))) if a else 3
        return {(0,) * k: 1.0}
    out = dict(a)
    for _ in range(n - 1):
        out = p_mul(out, a, max_deg)
    return out


def p_truncate(a, max_deg):
    return {e: c for e, c in a.items() if sum(e) <= max_deg}


def p_diff(a, i):
    out = {}
    for e, c in a.items():
        if e[i] > 0:
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            out[ne] = out.get(ne, 0.0) + c * e[i]
    return out


def p_degree(a):
    return max((sum(e) for e in a), default=0)


def p_shift(a, y, max_deg):
    """q(u) = p(y + u), truncated at total degree max_deg in u."""
    k = len(y)
    out = {}
    for e, c in a.items():
        # per-dimension binomial expansions (u-exponent, coefficient)
        dims = []
        for d in range(k):
            p = e[d]
            dims.append([(j, comb(p, j) * y[d] ** (p - j)) for j in range(min(p, max_deg) + 1)])
        for combo in product(*dims):
            ue = tuple(j for j, _ in combo)
            if sum(ue) > max_deg:
                continue
            coef = c
            for _, w in combo:
                coef *= w
            if coef != 0.0:
                out[ue] = out.get(ue, 0.0) + coef
    return p_prune(out)


def series_reciprocal(a, order):
    """Truncated power series of 1/a; constant term of a must be nonzero."""
    k = len(next(iter(a)))
    zero = (0,) * k
    c0 = a.get(zero, 0.0)
    if c0 == 0.0:
        raise ZeroDivisionError("series reciprocal of a polynomial without constant term")
    e = p_scale(p_truncate(a, order), -1.0 / c0)
    e[zero] = e.get(zero, 0.0) + 1.0  # e = 1 - a/c0, no constant term
    e = p_prune(e)
    out = {zero: 1.0}
    power = {zero: 1.0}
    for _ in range(order):
        power = p_mul(power, e, order)
        if not power:
            break
        out = p_add(out, power)
    return p_scale(out, 1.0 / c0)


def to_arrays(a, arity):
    """Deterministically ordered (powers, coeffs) arrays for the kernels."""
    if not a:
        return np.zeros((1, arity), dtype=np.int64), np.zeros(1)
    keys = sorted(a)
    powers = np.array(keys, dtype=np.int64).reshape(len(keys), arity)
    coeffs = np.array([a[e] for e in keys])
    return powers, coeffs


def p_eval(a, pts):
    pts = np.atleast_2d(np.asarray(pts, dtype=np.float64))
    if not a:
        return np.zeros(pts.shape[0])
    powers, coeffs = to_arrays(a, pts.shape[1])
    return eval_poly(powers, coeffs, pts)


def fd_weights(nodes, x0, m):
    """Fornberg finite-difference weights for the m-th derivative at x0."""
    nodes = np.asarray(nodes, dtype=np.float64)
    n = len(nodes)
    w = np.zeros((m + 1, n))
    w[0, 0] = 1.0
    c1 = 1.0
    c4 = nodes[0] - x0
    for i in range(1, n):
        mn = min(i, m)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - x0
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for s in range(mn, 0, -1):
                    w[s, i] = c1 * (s * w[s - 1, i - 1] - c5 * w[s, i - 1]) / c2
                w[0, i] = -c1 * c5 * w[0, i - 1] / c2
            for s in range(mn, 0, -1):
                w[s, j] = ((c4 * w[s, j] - s * w[s - 1, j])) / c3
            w[0, j] = c4 * w[0, j] / c3
        c1 = c2
    return w[m]
