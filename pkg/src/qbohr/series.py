"""Truncated slice regular power series ``f(q) = sum_k q^k p_k``.

Coefficients sit to the RIGHT of the powers of ``q``.  A :class:`QSeries`
stores them as a read-only ``(K + 1, 4)`` float array; all operations are
pure and return new series.

The regular (star) product is the Cauchy convolution with ``f``'s
coefficients on the left; it agrees with the pointwise product only after
the twist ``h(f(q)^-1 q f(q))``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _backend
from .errors import ZeroDivisorError
from .quaternion import ZERO_GUARD, Quaternion, inverse, modulus

#: Default truncation order for verification runs.
DEFAULT_ORDER = 2048


class QSeries:
    """Immutable truncated left power series with quaternion coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=float)
        if c.ndim == 1 and c.size == 4:
            c = c.reshape(1, 4)
        if c.ndim != 2 or c.shape[1] != 4:
            raise ValueError(f"coefficients must have shape (n, 4), got {c.shape}")
        if c.shape[0] == 0:
            c = np.zeros((1, 4))
        c.setflags(write=False)
        self._c = c

    @classmethod
    def from_quaternions(cls, coeffs: Iterable[Quaternion | float]) -> "QSeries":
        rows = []
        for p in coeffs:
            if isinstance(p, Quaternion):
                rows.append(p.as_tuple())
            else:
                rows.append((float(p), 0.0, 0.0, 0.0))
        return cls(rows)

    @classmethod
    def from_real(cls, values: Sequence[float]) -> "QSeries":
        c = np.zeros((len(values), 4))
        c[:, 0] = values
        return cls(c)

    @classmethod
    def constant(cls, p: Quaternion | float) -> "QSeries":
        return cls.from_quaternions([p])

    @classmethod
    def unit(cls) -> "QSeries":
        return cls.from_real([1.0])

    @classmethod
    def variable(cls) -> "QSeries":
        """The identity function ``q``."""
        return cls.from_real([0.0, 1.0])

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.shape[0] - 1

    def __len__(self) -> int:
        return self._c.shape[0]

    def __getitem__(self, k: int) -> Quaternion:
        if 0 <= k < len(self):
            return Quaternion(*map(float, self._c[k]))
        if k < 0:
            raise IndexError(k)
        return Quaternion()

    def quaternions(self) -> list[Quaternion]:
        return [self[k] for k in range(len(self))]

    def moduli(self) -> np.ndarray:
        return np.sqrt(np.einsum("ij,ij->i", self._c, self._c))

    def __call__(self, q: Quaternion) -> Quaternion:
        return evaluate(self, q)

    def __repr__(self) -> str:
        return f"QSeries(order={self.order}, coeffs={self._c.tolist()!r})"

    def truncate(self, order: int) -> "QSeries":
        return QSeries(self._c[: order + 1])

    def padded(self, order: int) -> "QSeries":
        if order <= self.order:
            return self.truncate(order)
        c = np.zeros((order + 1, 4))
        c[: len(self)] = self._c
        return QSeries(c)

    def __add__(self, other: "QSeries") -> "QSeries":
        n = max(len(self), len(other))
        c = np.zeros((n, 4))
        c[: len(self)] += self._c
        c[: len(other)] += other._c
        return QSeries(c)

    def __neg__(self) -> "QSeries":
        return QSeries(-self._c)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, t: float) -> "QSeries":
        return QSeries(self._c * t)

    def right_mul(self, u: Quaternion) -> "QSeries":
        """Coefficientwise ``p_k u``; equals ``f * u`` with ``u`` a constant series."""
        return star_product(self, QSeries.constant(u))

    def shift(self, n: int = 1) -> "QSeries":
        """Multiply by ``q^n``."""
        c = np.zeros((len(self) + n, 4))
        c[n:] = self._c
        return QSeries(c)

    def to_literal(self) -> list[list[float]]:
        return self._c.tolist()


@dataclass(frozen=True)
class TailBound:
    """Upper bound on the discarded tail of a majorant sum."""

    value: float

    def __post_init__(self):
        if not self.value >= 0.0:
            raise ValueError(f"tail bound must be nonnegative, got {self.value}")


def parse_series(literal) -> QSeries:
    """Read the JSON quadruple-array literal ``[[x0, x1, x2, x3], ...]``.

    Index ``k`` of the outer array is the coefficient of ``q^k``.
    """
    if isinstance(literal, (str, bytes)):
        literal = json.loads(literal)
    if not isinstance(literal, list) or not literal:
        raise ValueError("series literal must be a nonempty JSON array")
    for row in literal:
        if not isinstance(row, list) or len(row) != 4:
            raise ValueError(f"each coefficient must be a 4-element array, got {row!r}")
    return QSeries(literal)


def dump_series(f: QSeries) -> str:
    return json.dumps(f.to_literal())


def _points(q) -> np.ndarray:
    if isinstance(q, Quaternion):
        return np.array([q.as_tuple()])
    return np.ascontiguousarray(np.asarray(q, dtype=float).reshape(-1, 4))


def evaluate(f: QSeries, q: Quaternion) -> Quaternion:
    """``sum_k q^k p_k`` by Horner's rule, ``a <- q a + p_k``."""
    out = _backend.horner(f.coeffs, _points(q))
    return Quaternion(*map(float, out[0]))


def evaluate_many(f: QSeries, points) -> np.ndarray:
    """Vectorized :func:`evaluate` over an ``(n, 4)`` array of points."""
    return _backend.horner(f.coeffs, _points(points))


def star_product(f: QSeries, h: QSeries, order: int | None = None) -> QSeries:
    """Regular product ``f * h``: ``c_k = sum_n p_n a_{k-n}``."""
    n_out = len(f) + len(h) - 1 if order is None else order + 1
    return QSeries(_backend.star_convolve(f.coeffs, h.coeffs, n_out))


def regular_conjugate(f: QSeries) -> QSeries:
    c = f.coeffs.copy()
    c[:, 1:] *= -1.0
    return QSeries(c)


def symmetrization(f: QSeries, order: int | None = None) -> QSeries:
    """``f^s = f * f^c``; its coefficients are real up to rounding."""
    return star_product(f, regular_conjugate(f), order)


def regular_reciprocal(f: QSeries, order: int) -> QSeries:
    """Truncated ``f^{-*} = (f^s)^{-1} f^c`` of the given order.

    The real series ``f^s`` is inverted by recursion, then multiplied by ``f^c``.
    """
    if modulus(f[0]) < ZERO_GUARD:
        raise ZeroDivisorError("reciprocal undefined at origin: |p_0| = 0")
    fs = symmetrization(f, order)
    inv = _backend.real_inverse(np.ascontiguousarray(fs.coeffs[:, 0]), order + 1)
    g = np.zeros((order + 1, 4))
    g[:, 0] = inv
    return star_product(QSeries(g), regular_conjugate(f), order)


def slice_derivative(f: QSeries) -> QSeries:
    if f.order == 0:
        return QSeries(np.zeros((1, 4)))
    k = np.arange(1, len(f), dtype=float)
    return QSeries(f.coeffs[1:] * k[:, None])


def transform_tf(f: QSeries, q: Quaternion) -> Quaternion:
    """``T_f(q) = f^c(q)^-1 q f^c(q)``."""
    c = evaluate(regular_conjugate(f), q)
    if modulus(c) < ZERO_GUARD:
        raise ZeroDivisorError("transform undefined: f^c(q) = 0")
    return inverse(c) * q * c


def series_close(f: QSeries, h: QSeries, tol: float = 1e-10) -> bool:
    """Per-coefficient comparison after scaling the larger series to unit max modulus."""
    n = max(len(f), len(h))
    a = f.padded(n - 1).coeffs
    b = h.padded(n - 1).coeffs
    scale = float(max(f.moduli().max(), h.moduli().max())) or 1.0
    return bool(np.all(np.abs(a - b) <= tol * scale))
