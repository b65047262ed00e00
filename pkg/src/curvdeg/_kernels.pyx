# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernels: sparse polynomial evaluation on point batches
and the stereographic chart map.  Mirrors curvdeg._kernels_py exactly."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def eval_poly(cnp.int64_t[:, ::1] powers, double[::1] coeffs, double[:, ::1] pts):
    cdef Py_ssize_t m = powers.shape[0]
    cdef Py_ssize_t k = powers.shape[1]
    cdef Py_ssize_t n = pts.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.zeros(n)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j, d
    cdef cnp.int64_t e, q
    cdef double term, base, acc
    for i in range(n):
        acc = 0.0
        for j in range(m):
            term = coeffs[j]
            for d in range(k):
                e = powers[j, d]
                if e > 0:
                    base = pts[i, d]
                    # exponentiation by squaring on small integer powers
                    q = e
                    while q > 1:
                        if q & 1:
                            term *= base
                        base *= base
                        q >>= 1
                    term *= base
            acc += term
        ov[i] = acc
    return out


def chart_points(double[:, ::1] basis, double[:, ::1] x):
    cdef Py_ssize_t n = x.shape[0]
    cdef cnp.ndarray[double, ndim=2] out = np.empty((n, 4))
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, j
    cdef double n2, inv
    for i in range(n):
        n2 = x[i, 0] * x[i, 0] + x[i, 1] * x[i, 1] + x[i, 2] * x[i, 2]
        inv = 1.0 / (1.0 + n2)
        for j in range(4):
            ov[i, j] = (2.0 * (x[i, 0] * basis[0, j] + x[i, 1] * basis[1, j]
                               + x[i, 2] * basis[2, j])
                        + (1.0 - n2) * basis[3, j]) * inv
    return out
