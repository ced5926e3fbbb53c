"""Shared test utilities."""

import numpy as np

from qbohr.quaternion import Quaternion

try:
    from qbohr import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def rand_quat(rng, scale=1.0) -> Quaternion:
    return Quaternion(*(scale * rng.uniform(-1, 1, 4)))


def rand_coeffs(rng, n, max_modulus=1.0) -> np.ndarray:
    """``n`` quaternion coefficients with moduli at most ``max_modulus``."""
    v = rng.standard_normal((n, 4))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v * rng.uniform(0, max_modulus, n)[:, None]


def naive_eval(coeffs, q: Quaternion) -> Quaternion:
    """``sum_k q^k p_k`` with explicit powers; independent of the Horner kernels."""
    total = Quaternion()
    power = Quaternion(1.0)
    for row in np.asarray(coeffs):
        total = total + power * Quaternion(*row)
        power = power * q
    return total


def qclose(a: Quaternion, b: Quaternion, tol: float) -> bool:
    return abs(a - b) <= tol
