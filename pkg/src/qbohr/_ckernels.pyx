# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for quaternion series arithmetic.

Signatures mirror :mod:`qbohr._pykernels`; reductions run in a fixed
sequential order so results are bitwise reproducible.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def star_convolve(const double[:, ::1] a, const double[:, ::1] b, Py_ssize_t n_out):
    """Coefficients ``c_k = sum_j a_j b_{k-j}`` (Hamilton products, ``a`` on the left)."""
    cdef Py_ssize_t na = a.shape[0], nb = b.shape[0]
    cdef Py_ssize_t k, j, jlo, jhi
    cdef double a0, a1, a2, a3, b0, b1, b2, b3
    cdef double c0, c1, c2, c3
    out = np.zeros((n_out, 4), dtype=np.float64)
    cdef double[:, ::1] c = out
    for k in range(n_out):
        jlo = k - nb + 1
        if jlo < 0:
            jlo = 0
        jhi = k
        if jhi > na - 1:
            jhi = na - 1
        c0 = 0.0; c1 = 0.0; c2 = 0.0; c3 = 0.0
        for j in range(jlo, jhi + 1):
            a0 = a[j, 0]; a1 = a[j, 1]; a2 = a[j, 2]; a3 = a[j, 3]
            b0 = b[k - j, 0]; b1 = b[k - j, 1]; b2 = b[k - j, 2]; b3 = b[k - j, 3]
            c0 += a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3
            c1 += a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2
            c2 += a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1
            c3 += a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0
        c[k, 0] = c0; c[k, 1] = c1; c[k, 2] = c2; c[k, 3] = c3
    return out


def horner(const double[:, ::1] coeffs, const double[:, ::1] points):
    """Evaluate ``sum_k q^k p_k`` at each row of ``points`` (powers of ``q`` on the left)."""
    cdef Py_ssize_t n = coeffs.shape[0], npts = points.shape[0]
    cdef Py_ssize_t i, k
    cdef double q0, q1, q2, q3, s0, s1, s2, s3, t0, t1, t2, t3
    out = np.zeros((npts, 4), dtype=np.float64)
    cdef double[:, ::1] res = out
    if n == 0:
        return out
    for i in range(npts):
        q0 = points[i, 0]; q1 = points[i, 1]; q2 = points[i, 2]; q3 = points[i, 3]
        s0 = coeffs[n - 1, 0]; s1 = coeffs[n - 1, 1]
        s2 = coeffs[n - 1, 2]; s3 = coeffs[n - 1, 3]
        for k in range(n - 2, -1, -1):
            t0 = q0 * s0 - q1 * s1 - q2 * s2 - q3 * s3
            t1 = q0 * s1 + q1 * s0 + q2 * s3 - q3 * s2
            t2 = q0 * s2 - q1 * s3 + q2 * s0 + q3 * s1
            t3 = q0 * s3 + q1 * s2 - q2 * s1 + q3 * s0
            s0 = t0 + coeffs[k, 0]; s1 = t1 + coeffs[k, 1]
            s2 = t2 + coeffs[k, 2]; s3 = t3 + coeffs[k, 3]
        res[i, 0] = s0; res[i, 1] = s1; res[i, 2] = s2; res[i, 3] = s3
    return out


def real_inverse(const double[::1] s, Py_ssize_t n_out):
    """Reciprocal of a real power series with ``s[0] != 0``, truncated to ``n_out`` terms."""
    cdef Py_ssize_t n = s.shape[0], k, j, jhi
    cdef double inv0 = 1.0 / s[0], acc
    out = np.zeros(n_out, dtype=np.float64)
    cdef double[::1] g = out
    if n_out == 0:
        return out
    g[0] = inv0
    for k in range(1, n_out):
        jhi = k if k < n - 1 else n - 1
        acc = 0.0
        for j in range(1, jhi + 1):
            acc += s[j] * g[k - j]
        g[k] = -acc * inv0
    return out
