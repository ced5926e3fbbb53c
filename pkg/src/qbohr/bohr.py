"""Bohr-type majorant functionals of slice regular series.

Every functional depends on ``q`` only through ``r = |q|`` because
``|q^k p_k| = r^k |p_k|``.  Weighted functionals replace ``r^k`` by a majorant
``W_k(r) >= sup_{|q| = r} |omega_k(q)|``: exactly ``r^k`` for the monomial
family ``omega_k(q) = q^k u``, and a sampled supremum for user-supplied
weight series.

Coefficient classes are defined by the coefficient bounds the inequalities
consume, not by full geometric membership (starlikeness etc.), so
certifying a class here certifies a superset of the geometric class.

The vectorized ``_eval_*`` helpers work on moduli matrices of shape
``(samples, K + 1)`` and radius grids of shape ``(R,)``; the public
functions are thin single-series wrappers around them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ClassViolation, DomainError
from .quaternion import ONE, Quaternion, sample_boundary_array, sample_sphere_array
from .series import QSeries, TailBound, evaluate_many, slice_derivative

CLASS_SLACK = 1e-12


class CoefficientClass(str, Enum):
    STARLIKE = "starlike"
    DERIV_STARLIKE = "deriv_starlike"
    BOUNDED = "bounded"
    HALF_SPACE = "half_space"

    def bounds(self, K: int, p0: float = 0.0) -> np.ndarray:
        """Upper bounds on ``|p_k|``, ``k = 0..K``.

        ``p0`` is ``|p_0|`` for BOUNDED and the real ``p_0`` for HALF_SPACE;
        the normalized classes fix ``p_0 = 0`` and ``p_1 = 1``.
        """
        k = np.arange(K + 1, dtype=float)
        if self is CoefficientClass.STARLIKE:
            b = k.copy()
        elif self is CoefficientClass.DERIV_STARLIKE:
            b = np.ones(K + 1)
            b[0] = 0.0
        elif self is CoefficientClass.BOUNDED:
            b = np.full(K + 1, max(1.0 - p0 * p0, 0.0))
            b[0] = p0
        else:
            b = np.full(K + 1, max(2.0 * (1.0 - p0), 0.0))
            b[0] = p0
        return b

    @property
    def normalized(self) -> bool:
        return self in (CoefficientClass.STARLIKE, CoefficientClass.DERIV_STARLIKE)

    def tail_bounds(self, K: int, r, p0: float = 0.0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Class remainders beyond order ``K`` at radii ``r``.

        Returns ``(sum b_k r^k, sum b_k^2 r^2k, sum k b_k^2 r^2k)`` over ``k > K``.
        """
        r = np.asarray(r, dtype=float)
        x = r * r
        with np.errstate(under="ignore"):
            rk = r ** (K + 1)
            xk = x ** (K + 1)
        if self is CoefficientClass.STARLIKE:
            lin = rk * ((K + 1) - K * r) / (1.0 - r) ** 2
            quad = xk * ((K + 1) ** 2 - (2 * K * K + 2 * K - 1) * x + K * K * x * x) / (1.0 - x) ** 3
            # ratio-test bound for sum k^3 x^k: term ratios are at most x ((K+2)/(K+1))^3
            rho = x * ((K + 2) / (K + 1)) ** 3
            with np.errstate(divide="ignore"):
                area = np.where(rho < 1.0, (K + 1) ** 3 * xk / (1.0 - rho), np.inf)
            return lin, quad, area
        B = float(self.bounds(1, p0)[1])
        lin = B * rk / (1.0 - r)
        quad = B * B * xk / (1.0 - x)
        area = B * B * xk * ((K + 1) - K * x) / (1.0 - x) ** 2
        return lin, quad, area


class ClassCheck(NamedTuple):
    ok: bool
    index: int | None

    def __bool__(self) -> bool:
        return self.ok


def validate_class(f: QSeries, cls: CoefficientClass, slack: float = CLASS_SLACK) -> ClassCheck:
    """Check the coefficient bounds of ``cls``; report the first violating index."""
    cls = CoefficientClass(cls)
    mod = f.moduli()
    c = f.coeffs
    if cls.normalized:
        if mod[0] > slack:
            return ClassCheck(False, 0)
        if len(f) < 2 or np.abs(c[1] - (1.0, 0.0, 0.0, 0.0)).max() > slack:
            return ClassCheck(False, 1)
        b = cls.bounds(f.order)
        start = 2
    elif cls is CoefficientClass.BOUNDED:
        if mod[0] > 1.0 + slack:
            return ClassCheck(False, 0)
        b = cls.bounds(f.order, float(mod[0]))
        start = 1
    else:
        p0 = float(c[0, 0])
        if np.abs(c[0, 1:]).max() > slack or not (0.0 <= p0 < 1.0):
            return ClassCheck(False, 0)
        b = cls.bounds(f.order, p0)
        start = 1
    bad = np.nonzero(mod[start:] > b[start:] + slack)[0]
    if bad.size:
        return ClassCheck(False, int(bad[0]) + start)
    return ClassCheck(True, None)


def _sample_batch(cls: CoefficientClass, K: int, n: int, rng: np.random.Generator,
                  boundary: bool = False) -> np.ndarray:
    """``n`` random members of ``cls`` of order ``K`` as an ``(n, K + 1, 4)`` array."""
    cls = CoefficientClass(cls)
    out = np.zeros((n, K + 1, 4))
    if cls.normalized:
        p0 = np.zeros(n)
        out[:, 1, 0] = 1.0
        start = 2
    else:
        p0 = rng.uniform(0.0, 1.0, n)
        if cls is CoefficientClass.BOUNDED:
            out[:, 0] = sample_boundary_array(rng, n) * p0[:, None]
        else:
            out[:, 0, 0] = p0
        start = 1
    m = K + 1 - start
    if m <= 0:
        return out
    dirs = sample_boundary_array(rng, n * m).reshape(n, m, 4)
    bounds = np.stack([cls.bounds(K, float(t))[start:] for t in p0])
    scale = bounds if boundary else bounds * rng.uniform(0.0, 1.0, (n, m))
    out[:, start:] = dirs * scale[:, :, None]
    return out


def sample_class(cls: CoefficientClass, K: int, seed, boundary: bool = False) -> QSeries:
    """Seeded random member of ``cls``; ``boundary=True`` puts every ``|p_k|`` at its bound."""
    if K < 1:
        raise DomainError(f"K must be >= 1, got {K}")
    rng = np.random.default_rng(seed)
    return QSeries(_sample_batch(cls, K, 1, rng, boundary)[0])


# ---------------------------------------------------------------- weights

@dataclass(frozen=True)
class Monomial:
    """``omega_k(q) = q^k u``; its majorant is exactly ``r^k``."""

    u: Quaternion = ONE


@dataclass(frozen=True)
class UserSeries:
    """Explicit weight series ``omega_1, omega_2, ...``.

    Weights past the end of the list default to the Schwarz bound ``r^k``.
    """

    series: tuple[QSeries, ...]
    n_units: int = 64
    n_angles: int = 64
    seed: int = 0


WeightFamily = Monomial | UserSeries


def _sphere_points(weight: UserSeries, r: float) -> np.ndarray:
    rng = np.random.default_rng(weight.seed)
    units = sample_sphere_array(rng, weight.n_units)
    theta = np.linspace(0.0, np.pi, weight.n_angles)
    # upper half-plane of each slice; the lower half is the slice for -I
    pts = np.empty((weight.n_units, weight.n_angles, 4))
    pts[:] = units[:, None, :] * (r * np.sin(theta))[None, :, None]
    pts[:, :, 0] = r * np.cos(theta)[None, :]
    return pts.reshape(-1, 4)


def weight_majorants(weight: WeightFamily | None, radii, K: int) -> np.ndarray:
    """``W[j, k] >= sup_{|q| = r_j} |omega_k(q)|`` for ``k = 0..K`` (column 0 is 1)."""
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    k = np.arange(K + 1)
    with np.errstate(under="ignore"):
        W = radii[:, None] ** k[None, :]
    if weight is None or isinstance(weight, Monomial):
        return W
    for j, r in enumerate(radii):
        pts = _sphere_points(weight, float(r))
        for idx, om in enumerate(weight.series[:K], start=1):
            vals = evaluate_many(om, pts)
            W[j, idx] = float(np.sqrt((vals * vals).sum(axis=1)).max())
    return W


def validate_weight(weight: WeightFamily, radii: Sequence[float] = (0.25, 0.5, 0.75, 0.95),
                    rtol: float = 1e-12) -> None:
    """Raise :class:`ClassViolation` unless each ``omega_k`` vanishes to order ``k``
    at 0 and obeys ``|omega_k(q)| <= |q|^k`` on the sampled spheres."""
    if isinstance(weight, Monomial):
        if abs(abs(weight.u) - 1.0) > 1e-12:
            raise ClassViolation("monomial weight needs |u| = 1")
        return
    for idx, om in enumerate(weight.series, start=1):
        if np.abs(om.coeffs[:idx]).max(initial=0.0) > CLASS_SLACK:
            raise ClassViolation(f"omega_{idx} does not vanish to order {idx} at 0")
    K = len(weight.series)
    W = weight_majorants(weight, radii, K)
    for j, r in enumerate(radii):
        for idx in range(1, K + 1):
            if W[j, idx] > r**idx * (1.0 + rtol):
                raise ClassViolation(
                    f"omega_{idx} breaks the Schwarz bound at |q| = {r}: {W[j, idx]} > {r**idx}")


# ---------------------------------------------------------------- parameters

@dataclass(frozen=True)
class BohrParams:
    """Knobs of the generalized functionals."""

    m: float = 1.0
    d: tuple[float, ...] = ()
    weight: WeightFamily = field(default_factory=Monomial)

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(float(x) for x in self.d))
        if any(x < 0 for x in self.d):
            raise DomainError(f"polynomial coefficients must be nonnegative, got {self.d}")
        if not self.m > 0:
            raise DomainError(f"m must be positive, got {self.m}")

    @property
    def N(self) -> int:
        return len(self.d)


def poly_Q(d: Sequence[float], w):
    """``Q_N(w) = d_1 w + ... + d_N w^N`` (Horner)."""
    acc = np.zeros_like(np.asarray(w, dtype=float))
    for dk in reversed(tuple(d)):
        acc = (acc + dk) * w
    return acc


# ---------------------------------------------------------------- vectorized core

def _check_r(radii) -> np.ndarray:
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    if radii.size and (radii.min() < 0.0 or radii.max() >= 1.0):
        raise DomainError(f"radius must lie in [0, 1), got {radii}")
    return radii


def _eval_linear(mod, W):
    """``sum_{k>=1} W_k |p_k|`` for every (sample, radius)."""
    return mod[:, 1:] @ W[:, 1:].T


def _eval_quadratic(mod, W):
    """``sum_{k>=1} (W_k |p_k|)^2``."""
    return (mod[:, 1:] ** 2) @ (W[:, 1:] ** 2).T


def _eval_area(mod, radii):
    k = np.arange(1, mod.shape[1])
    with np.errstate(under="ignore"):
        X = k[None, :] * radii[:, None] ** (2 * k[None, :])
    return (mod[:, 1:] ** 2) @ X.T


def _eval_K(mod, W, m):
    return mod[:, :1] ** m + _eval_linear(mod, W)


def _eval_L(mod, W, m):
    w1 = W[:, 1][None, :]
    coef = 1.0 / (1.0 + mod[:, :1]) + w1 / (1.0 - w1)
    return _eval_K(mod, W, m) + coef * _eval_quadratic(mod, W)


def _eval_M(mod, W, radii, m, d):
    return _eval_K(mod, W, m) + poly_Q(d, _eval_area(mod, radii))


def _eval_N(p0, mod, radii):
    W = weight_majorants(None, radii, mod.shape[1] - 1)
    coef = 1.0 / (1.0 + p0[:, None]) + (radii / (1.0 - radii))[None, :]
    return p0[:, None] + _eval_linear(mod, W) + coef * _eval_quadratic(mod, W)


def _tails(functional: str, cls: CoefficientClass, K: int, radii, p0: float,
           m: float = 1.0, d: Sequence[float] = (), area=None):
    """Upper bound on the remainder beyond order ``K`` for one function."""
    lin, quad, area_tail = cls.tail_bounds(K, radii, p0)
    if functional in ("sum", "A", "B", "K"):
        return lin
    if functional == "L":
        return lin + (1.0 / (1.0 + p0) + radii / (1.0 - radii)) * quad
    if functional == "N":
        return lin + (1.0 / (1.0 + p0) + radii / (1.0 - radii)) * quad
    if functional == "S":
        return area_tail
    if functional == "M":
        # Q is nondecreasing, so the S* remainder enters through Q(S* + tail) - Q(S*)
        return lin + poly_Q(d, area + area_tail) - poly_Q(d, area)
    raise DomainError(f"unknown functional {functional!r}")


def _default_class(functional: str) -> CoefficientClass:
    return CoefficientClass.HALF_SPACE if functional == "N" else CoefficientClass.BOUNDED


def _class_p0(f: QSeries, cls: CoefficientClass) -> float:
    if cls is CoefficientClass.HALF_SPACE:
        return float(f.coeffs[0, 0])
    return float(f.moduli()[0])


def _finish(functional, f, r, value, cls, with_tail, m=1.0, d=(), area=None):
    if not with_tail:
        return value
    cls = _default_class(functional) if cls is None else CoefficientClass(cls)
    tail = _tails(functional, cls, f.order, np.array([r]), _class_p0(f, cls), m, d,
                  None if area is None else np.array([area]))
    return value, TailBound(float(tail[0]))


# ---------------------------------------------------------------- public functionals

def bohr_sum(f: QSeries, r: float, *, cls: CoefficientClass | None = None,
             with_tail: bool = False):
    """``sum_k r^k |p_k|``."""
    radii = _check_r(r)
    W = weight_majorants(None, radii, f.order)
    mod = f.moduli()[None, :]
    value = float((mod[:, 0] + _eval_linear(mod, W)[:, 0])[0])
    return _finish("sum", f, float(r), value, cls, with_tail)


def functional_K(f: QSeries, r: float, m: float = 1.0, weight: WeightFamily | None = None,
                 *, cls: CoefficientClass | None = None, with_tail: bool = False):
    """``|p_0|^m + sum_{k>=1} W_k(r) |p_k|``."""
    if not (0.0 < m <= 2.0):
        raise DomainError(f"m must lie in (0, 2], got {m}")
    radii = _check_r(r)
    W = weight_majorants(weight, radii, f.order)
    value = float(_eval_K(f.moduli()[None, :], W, m)[0, 0])
    return _finish("K", f, float(r), value, cls, with_tail, m)


def functional_L(f: QSeries, r: float, m: float = 1.0, weight: WeightFamily | None = None,
                 *, cls: CoefficientClass | None = None, with_tail: bool = False):
    """``K + (1/(1+|p_0|) + W_1/(1-W_1)) sum_{k>=1} (W_k |p_k|)^2``."""
    if not (0.0 < m <= 1.0):
        raise DomainError(f"m must lie in (0, 1], got {m}")
    radii = _check_r(r)
    W = weight_majorants(weight, radii, max(f.order, 1))
    mod = f.padded(max(f.order, 1)).moduli()[None, :]
    value = float(_eval_L(mod, W, m)[0, 0])
    return _finish("L", f, float(r), value, cls, with_tail, m)


def s_star(f: QSeries, r: float, *, cls: CoefficientClass | None = None,
           with_tail: bool = False):
    """``sum_{k>=1} k r^(2k) |p_k|^2``."""
    radii = _check_r(r)
    value = float(_eval_area(f.moduli()[None, :], radii)[0, 0])
    return _finish("S", f, float(r), value, cls, with_tail)


def functional_M(f: QSeries, r: float, m: float = 1.0, params: BohrParams | Sequence[float] = (),
                 weight: WeightFamily | None = None, *, cls: CoefficientClass | None = None,
                 with_tail: bool = False):
    """``K + Q_N(S*)``; admissibility of ``d`` is not required here."""
    if not (0.0 < m <= 1.0):
        raise DomainError(f"m must lie in (0, 1], got {m}")
    if isinstance(params, BohrParams):
        d = params.d
        weight = params.weight if weight is None else weight
    else:
        d = tuple(params)
        if any(x < 0 for x in d):
            raise DomainError(f"polynomial coefficients must be nonnegative, got {d}")
    radii = _check_r(r)
    mod = f.moduli()[None, :]
    W = weight_majorants(weight, radii, f.order)
    area = float(_eval_area(mod, radii)[0, 0])
    value = float(_eval_K(mod, W, m)[0, 0] + poly_Q(d, area))
    return _finish("M", f, float(r), value, cls, with_tail, m, d, area)


def functional_N(f: QSeries, r: float, *, cls: CoefficientClass | None = None,
                 with_tail: bool = False):
    """``sum_k r^k |p_k| + (1/(1+p_0) + r/(1-r)) sum_{k>=1} r^(2k) |p_k|^2`` for real ``p_0`` in [0, 1)."""
    p0 = f.coeffs[0]
    if np.abs(p0[1:]).max() > CLASS_SLACK or not (0.0 <= p0[0] < 1.0):
        raise ClassViolation(f"p_0 must be real in [0, 1), got {p0.tolist()}")
    radii = _check_r(r)
    value = float(_eval_N(np.array([p0[0]]), f.moduli()[None, :], radii)[0, 0])
    return _finish("N", f, float(r), value, cls, with_tail)


FUNCTIONALS = ("sum", "A", "B", "K", "L", "M", "N", "S")


def evaluate_functional(functional: str, f: QSeries, r: float, params: BohrParams | None = None,
                        *, cls: CoefficientClass | None = None, with_tail: bool = False):
    """Dispatch by functional id (``A`` and ``B`` are the plain Bohr sum of a normalized series)."""
    params = BohrParams() if params is None else params
    if functional in ("sum", "A", "B"):
        return bohr_sum(f, r, cls=cls, with_tail=with_tail)
    if functional == "K":
        return functional_K(f, r, params.m, params.weight, cls=cls, with_tail=with_tail)
    if functional == "L":
        return functional_L(f, r, params.m, params.weight, cls=cls, with_tail=with_tail)
    if functional == "M":
        return functional_M(f, r, params.m, params, cls=cls, with_tail=with_tail)
    if functional == "N":
        return functional_N(f, r, cls=cls, with_tail=with_tail)
    if functional == "S":
        return s_star(f, r, cls=cls, with_tail=with_tail)
    raise DomainError(f"unknown functional {functional!r}; expected one of {FUNCTIONALS}")


def starlike_spot_check(f: QSeries, radii: Sequence[float] = (0.1, 0.3, 0.5, 0.7, 0.9),
                        n_units: int = 16, n_angles: int = 32, seed: int = 0) -> float:
    """Smallest sampled ``Re(f(q)^-1 q f'(q))`` over the given spheres.

    A positive result is evidence, not proof, of slice starlikeness.
    """
    fp = slice_derivative(f)
    weight = UserSeries((), n_units, n_angles, seed)
    worst = math.inf
    for r in radii:
        pts = _sphere_points(weight, float(r))
        fv = evaluate_many(f, pts)
        dv = evaluate_many(fp, pts)
        for q, a, b in zip(pts, fv, dv):
            qa = Quaternion(*q)
            val = (Quaternion(*a).inverse() * qa * Quaternion(*b)).real
            worst = min(worst, val)
    return worst
