"""Extremal families and their exact functional values.

Four families realize equality at the Bohr radii:

* ``StarlikeKoebe``  ``q (1 - qu)^{-*2}``, ``p_k = k u^(k-1)``
* ``GeomCayley``     ``q (1 - qu)^{-*}``,  ``p_k = u^(k-1)``
* ``MobiusLike``     ``p_0 = a``, ``p_k = -(1 - a^2) a^(k-1) u``
* ``HalfSpaceMap``   ``p_0 = a``, ``p_k = -2 (1 - a) u``

:func:`build` writes coefficients from these closed forms;
:func:`build_by_algebra` rebuilds them with regular reciprocals and star
products and serves as a cross-check of :mod:`qbohr.series`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .bohr import poly_Q
from .errors import DomainError, NoWitnessError
from .quaternion import ONE, Quaternion, modulus, slice_decompose
from .series import DEFAULT_ORDER, QSeries, regular_reciprocal, star_product


class Family(str, Enum):
    STARLIKE_KOEBE = "StarlikeKoebe"
    GEOM_CAYLEY = "GeomCayley"
    MOBIUS_LIKE = "MobiusLike"
    HALF_SPACE_MAP = "HalfSpaceMap"

    @property
    def has_parameter(self) -> bool:
        return self in (Family.MOBIUS_LIKE, Family.HALF_SPACE_MAP)


#: ``a`` values approaching the supremum, and the limit they approach.
#: The Mobius family peaks as a -> 1; the half-space map as a -> 0.
LADDERS = {
    Family.MOBIUS_LIKE: ((0.9, 0.99, 0.999), 1.0),
    Family.HALF_SPACE_MAP: ((0.1, 0.01, 0.001), 0.0),
}


@dataclass(frozen=True)
class ExtremalSpec:
    family: Family
    a: float | None = None
    u: Quaternion = ONE
    K: int = DEFAULT_ORDER

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if abs(modulus(self.u) - 1.0) > 1e-12:
            raise DomainError(f"u must be a unit quaternion, |u| = {modulus(self.u)}")
        if self.K < 1:
            raise DomainError(f"K must be >= 1, got {self.K}")
        if self.family is Family.MOBIUS_LIKE:
            if self.a is None or not 0.0 < self.a < 1.0:
                raise DomainError(f"MobiusLike needs a in (0, 1), got {self.a}")
        elif self.family is Family.HALF_SPACE_MAP:
            # a = 0 is a genuine class member; a = 1 is the constant limit
            if self.a is None or not 0.0 <= self.a <= 1.0:
                raise DomainError(f"HalfSpaceMap needs a in [0, 1], got {self.a}")

    def to_dict(self) -> dict:
        return {"family": self.family.value, "a": self.a, "u": list(self.u.as_tuple()), "K": self.K}

    @classmethod
    def from_dict(cls, data: dict) -> "ExtremalSpec":
        u = Quaternion.from_seq(data.get("u", (1.0, 0.0, 0.0, 0.0)))
        return cls(Family(data["family"]), data.get("a"), u, int(data.get("K", DEFAULT_ORDER)))


def _unit_powers(u: Quaternion, n: int) -> np.ndarray:
    """``u^0 .. u^(n-1)`` via the slice form ``u = cos t + I sin t``."""
    x, y, unit = slice_decompose(u)
    t = math.atan2(y, x)
    k = np.arange(n)
    out = np.zeros((n, 4))
    out[:, 0] = np.cos(k * t)
    out[:, 1:] = np.sin(k * t)[:, None] * np.array(unit.as_tuple()[1:])[None, :]
    return out


def build(spec: ExtremalSpec) -> QSeries:
    K, u = spec.K, spec.u
    c = np.zeros((K + 1, 4))
    k = np.arange(1, K + 1, dtype=float)
    if spec.family is Family.STARLIKE_KOEBE:
        c[1:] = _unit_powers(u, K) * k[:, None]
    elif spec.family is Family.GEOM_CAYLEY:
        c[1:] = _unit_powers(u, K)
    elif spec.family is Family.MOBIUS_LIKE:
        a = spec.a
        c[0, 0] = a
        with np.errstate(under="ignore"):
            c[1:] = -(1.0 - a * a) * a ** (k - 1.0)[:, None] * np.array(u.as_tuple())[None, :]
    else:
        a = spec.a
        c[0, 0] = a
        c[1:] = -2.0 * (1.0 - a) * np.array(u.as_tuple())[None, :]
    return QSeries(c)


def build_by_algebra(spec: ExtremalSpec) -> QSeries:
    """Same coefficients as :func:`build`, assembled from ``*``-products and reciprocals."""
    K, u = spec.K, spec.u
    q = QSeries.variable()
    if spec.family in (Family.STARLIKE_KOEBE, Family.GEOM_CAYLEY):
        g = regular_reciprocal(QSeries.from_quaternions([ONE, -u]), K)
        if spec.family is Family.STARLIKE_KOEBE:
            g = star_product(g, g, K)
        return star_product(q, g, K)
    a = spec.a
    if spec.family is Family.MOBIUS_LIKE:
        mob = star_product(regular_reciprocal(QSeries.from_real([1.0, -a]), K),
                           QSeries.from_real([a, -1.0]), K)
        return QSeries.constant(a) + (mob - QSeries.constant(a)).right_mul(u)
    geo = regular_reciprocal(QSeries.from_real([1.0, -1.0]), K - 1)
    return QSeries.constant(a) - star_product(q, geo, K).right_mul(2.0 * (1.0 - a) * u)


def mobius_star_expression(a: float, u: Quaternion, K: int) -> QSeries:
    """``(1 - qa)^{-*} * (a - q) u`` taken literally; its constant term is ``a u``."""
    mob = star_product(regular_reciprocal(QSeries.from_real([1.0, -a]), K),
                       QSeries.from_real([a, -1.0]), K)
    return mob.right_mul(u)


def closed_form_value(family: Family | str, functional: str, r: float, a: float | None = None,
                      m: float = 1.0, d: Sequence[float] = ()) -> float:
    """Exact functional value of an extremal family at radius ``r`` (no truncation)."""
    family = Family(family)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radius must lie in [0, 1), got {r}")
    if family.has_parameter and a is None:
        raise DomainError(f"{family.value} needs the parameter a")
    if family is Family.STARLIKE_KOEBE and functional in ("A", "sum"):
        return r + (2.0 - r) * r * r / (1.0 - r) ** 2
    if family is Family.GEOM_CAYLEY and functional in ("B", "sum"):
        return r + r * r / (1.0 - r)
    if family is Family.MOBIUS_LIKE:
        area = (1.0 - a * a) ** 2 * r * r / (1.0 - a * a * r * r) ** 2
        if functional == "sum":
            return a + (1.0 - a * a) * r / (1.0 - a * r)
        if functional == "K":
            return a**m + (1.0 - a * a) * r / (1.0 - a * r)
        if functional == "L":
            return a**m + (1.0 - a * a) * r / (1.0 - r)
        if functional == "M":
            return a**m + (1.0 - a * a) * r / (1.0 - a * r) + float(poly_Q(d, area))
        if functional == "S":
            return area
    if family is Family.HALF_SPACE_MAP and functional == "N":
        return (a + 2.0 * (1.0 - a) * r / (1.0 - r)
                + (1.0 / (1.0 + a) + r / (1.0 - r)) * 4.0 * (1.0 - a) ** 2 * r * r / (1.0 - r * r))
    raise DomainError(f"no closed form for functional {functional!r} on {family.value}")


def ladder_limit(family: Family | str, functional: str, r: float, m: float = 1.0,
                 d: Sequence[float] = ()) -> float:
    """Closed form at the end of the family's ladder (``a -> 1`` or ``a -> 0``)."""
    family = Family(family)
    a = LADDERS[family][1] if family.has_parameter else None
    return closed_form_value(family, functional, r, a, m, d)


@dataclass(frozen=True)
class Witness:
    spec: ExtremalSpec
    r: float
    value: float

    def to_dict(self) -> dict:
        return {"spec": self.spec.to_dict(), "r": self.r, "value": self.value}


def sharpness_witness(theorem_id: str, r: float, m: float = 1.0, d: Sequence[float] = (),
                      u: Quaternion = ONE, K: int = DEFAULT_ORDER) -> Witness:
    """An extremal member whose functional exceeds 1 at radius ``r`` beyond the theorem's radius.

    Raises :class:`DomainError` if ``r`` is not beyond the radius and
    :class:`NoWitnessError` if no ladder member exceeds 1.
    """
    from .theorems import get_theorem

    thm = get_theorem(theorem_id)
    radius = thm.radius(m).value
    if not radius < r < 1.0:
        raise DomainError(f"witness radius {r} must lie in ({radius}, 1) for theorem {thm.id}")
    family = thm.family
    candidates = LADDERS[family][0] if family.has_parameter else (None,)
    best = None
    for a in candidates:
        value = closed_form_value(family, thm.functional, r, a, m, d)
        if best is None or value > best[1]:
            best = (a, value)
    a, value = best
    if not value > 1.0:
        raise NoWitnessError(f"theorem {thm.id}: no {family.value} member exceeds 1 at r = {r}")
    return Witness(ExtremalSpec(family, a, u, K), r, value)
