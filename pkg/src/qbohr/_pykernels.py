"""Pure-Python (numpy) versions of the series kernels.

Used when the compiled extension is unavailable or ``QBOHR_PURE_PYTHON`` is set.
"""

import numpy as np

# (left component, right component, target component, sign) for the Hamilton product
_TABLE = (
    (0, 0, 0, 1.0), (1, 1, 0, -1.0), (2, 2, 0, -1.0), (3, 3, 0, -1.0),
    (0, 1, 1, 1.0), (1, 0, 1, 1.0), (2, 3, 1, 1.0), (3, 2, 1, -1.0),
    (0, 2, 2, 1.0), (1, 3, 2, -1.0), (2, 0, 2, 1.0), (3, 1, 2, 1.0),
    (0, 3, 3, 1.0), (1, 2, 3, 1.0), (2, 1, 3, -1.0), (3, 0, 3, 1.0),
)


def star_convolve(a, b, n_out):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.zeros((n_out, 4))
    if n_out == 0 or len(a) == 0 or len(b) == 0:
        return out
    a = a[:n_out]
    b = b[:n_out]
    m = min(n_out, len(a) + len(b) - 1)
    for l, r, t, sign in _TABLE:
        out[:m, t] += sign * np.convolve(a[:, l], b[:, r])[:m]
    return out


def _qmul_rows(q, s):
    q0, q1, q2, q3 = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    s0, s1, s2, s3 = s[:, 0], s[:, 1], s[:, 2], s[:, 3]
    return np.stack([
        q0 * s0 - q1 * s1 - q2 * s2 - q3 * s3,
        q0 * s1 + q1 * s0 + q2 * s3 - q3 * s2,
        q0 * s2 - q1 * s3 + q2 * s0 + q3 * s1,
        q0 * s3 + q1 * s2 - q2 * s1 + q3 * s0,
    ], axis=1)


def horner(coeffs, points):
    coeffs = np.asarray(coeffs, dtype=float)
    points = np.asarray(points, dtype=float)
    out = np.zeros((len(points), 4))
    if len(coeffs) == 0:
        return out
    out[:] = coeffs[-1]
    for k in range(len(coeffs) - 2, -1, -1):
        out = _qmul_rows(points, out) + coeffs[k]
    return out


def real_inverse(s, n_out):
    s = np.asarray(s, dtype=float)
    g = np.zeros(n_out)
    if n_out == 0:
        return g
    inv0 = 1.0 / s[0]
    g[0] = inv0
    tail = s[1:]
    for k in range(1, n_out):
        jhi = min(k, len(s) - 1)
        # sum_{j=1..jhi} s_j g_{k-j}
        g[k] = -np.dot(tail[:jhi], g[k - 1::-1][:jhi]) * inv0
    return g
