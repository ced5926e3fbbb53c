"""Floating-point quaternion algebra.

A quaternion ``x0 + x1 i + x2 j + x3 k`` is stored as four binary64 floats and
multiplied with the Hamilton rules ``i^2 = j^2 = k^2 = ijk = -1``.  Values are
immutable; every operation returns a new :class:`Quaternion`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ZeroDivisorError

#: Moduli below this are treated as zero by :func:`inverse`.
ZERO_GUARD = 1e-12
#: Imaginary parts shorter than this are treated as real by :func:`slice_decompose`.
NEAR_REAL = 1e-9


@dataclass(frozen=True, slots=True)
class Quaternion:
    x0: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    @classmethod
    def from_seq(cls, values: Sequence[float]) -> "Quaternion":
        if len(values) != 4:
            raise ValueError(f"expected 4 components, got {len(values)}")
        return cls(*(float(v) for v in values))

    @classmethod
    def from_complex(cls, z: complex, unit: "Quaternion | None" = None) -> "Quaternion":
        """Embed ``z`` in the slice spanned by 1 and ``unit`` (default ``i``)."""
        unit = I_UNIT if unit is None else unit
        return cls(z.real) + z.imag * unit

    def __iter__(self):
        yield from (self.x0, self.x1, self.x2, self.x3)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x0, self.x1, self.x2, self.x3)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)

    @property
    def real(self) -> float:
        return self.x0

    @property
    def imag(self) -> "Quaternion":
        return Quaternion(0.0, self.x1, self.x2, self.x3)

    def is_real(self, tol: float = 0.0) -> bool:
        return math.sqrt(self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3) <= tol

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.x0 + other.x0, self.x1 + other.x1,
                              self.x2 + other.x2, self.x3 + other.x3)
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 + other, self.x1, self.x2, self.x3)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __sub__(self, other):
        if isinstance(other, (Quaternion, int, float)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 * other, self.x1 * other,
                              self.x2 * other, self.x3 * other)
        return NotImplemented

    def __rmul__(self, other):
        # only reached for real scalars, which are central
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.x0 / other, self.x1 / other,
                              self.x2 / other, self.x3 / other)
        return NotImplemented

    def __abs__(self) -> float:
        return modulus(self)

    def conj(self) -> "Quaternion":
        return conj(self)

    def inverse(self) -> "Quaternion":
        return inverse(self)

    def __repr__(self) -> str:
        return f"Quaternion({self.x0!r}, {self.x1!r}, {self.x2!r}, {self.x3!r})"


ONE = Quaternion(1.0)
I_UNIT = Quaternion(0.0, 1.0)
J_UNIT = Quaternion(0.0, 0.0, 1.0)
K_UNIT = Quaternion(0.0, 0.0, 0.0, 1.0)

#: Imaginary unit used for real quaternions, whose slice is not unique.
DEFAULT_UNIT = I_UNIT


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a b``."""
    a0, a1, a2, a3 = a.x0, a.x1, a.x2, a.x3
    b0, b1, b2, b3 = b.x0, b.x1, b.x2, b.x3
    return Quaternion(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.x0, -q.x1, -q.x2, -q.x3)


def modulus(q: Quaternion) -> float:
    return math.hypot(q.x0, q.x1, q.x2, q.x3)


def inverse(q: Quaternion) -> Quaternion:
    """``conj(q) / |q|^2``; raises :class:`ZeroDivisorError` for ``|q| < 1e-12``."""
    n = modulus(q)
    if n < ZERO_GUARD:
        raise ZeroDivisorError(f"quaternion {q!r} has no inverse")
    return conj(q) / (n * n)


class SliceForm(NamedTuple):
    """``q = x + y I`` with ``y >= 0`` and ``I`` a unit imaginary quaternion."""

    x: float
    y: float
    I: Quaternion

    def recompose(self) -> Quaternion:
        return recompose(self.x, self.y, self.I)


def slice_decompose(q: Quaternion) -> SliceForm:
    y = math.hypot(q.x1, q.x2, q.x3)
    if y < NEAR_REAL:
        return SliceForm(q.x0, 0.0, DEFAULT_UNIT)
    return SliceForm(q.x0, y, Quaternion(0.0, q.x1 / y, q.x2 / y, q.x3 / y))


def recompose(x: float, y: float, unit: Quaternion) -> Quaternion:
    return Quaternion(x) + y * unit


def sample_sphere(seed) -> Quaternion:
    """Seeded point of the sphere of unit imaginary quaternions."""
    v = np.random.default_rng(seed).standard_normal(3)
    v /= np.linalg.norm(v)
    return Quaternion(0.0, *map(float, v))


def sample_boundary(seed) -> Quaternion:
    """Seeded point of the unit 3-sphere ``|u| = 1``."""
    v = np.random.default_rng(seed).standard_normal(4)
    v /= np.linalg.norm(v)
    return Quaternion(*map(float, v))


def sample_sphere_array(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` unit imaginary quaternions as an ``(n, 4)`` array."""
    v = rng.standard_normal((n, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    out = np.zeros((n, 4))
    out[:, 1:] = v
    return out


def sample_boundary_array(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal((n, 4))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v
