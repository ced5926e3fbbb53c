"""Bohr radii, admissibility constants and their numerical oracles.

Closed-form radii are cross-checked by independent routes: ``R_m`` against a
numerical infimum of the ratio ``(1 - t^m) / (2 - t^2 - t^m)`` and the
cubic radius ``R*`` against the two-variable polynomial ``Q(alpha, r)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import DomainError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
#: rounding slack for the boundary case ``L(d) = m``
ADMISSIBLE_SLACK = 1e-12


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    ROOT_FIND = "root_find"
    INFIMUM = "infimum"


@dataclass(frozen=True)
class RadiusResult:
    value: float
    method: Method
    residual: float
    #: minimizer of the infimum route (only set for ``Method.INFIMUM``)
    argmin: float | None = None


def _check_m(m: float, upper: float) -> None:
    if not (0.0 < m <= upper):
        raise DomainError(f"m must lie in (0, {upper:g}], got {m!r}")


def bracketed_root(f: Callable[[float], float], df: Callable[[float], float],
                   lo: float, hi: float, xtol: float = 1e-6,
                   polish: int = 8) -> float:
    """Bisection down to a bracket of width ``xtol``, then Newton polish.

    Newton steps that leave the bracket are discarded.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise DomainError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(polish):
        d = df(x)
        if d == 0.0:
            break
        x_new = x - f(x) / d
        if not lo <= x_new <= hi or x_new == x:
            break
        x = x_new
    return x


def golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-12, max_iter: int = 200) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[lo, hi]``; returns ``(argmax, max)``."""
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
    # endpoints can win when the maximum sits on the boundary
    best = max((f1, x1), (f2, x2), (f(lo), lo), (f(hi), hi))
    return best[1], best[0]


def radius_classical() -> RadiusResult:
    v = 1.0 / 3.0
    return RadiusResult(v, Method.CLOSED_FORM, abs(3.0 * v - 1.0))


def radius_starlike() -> RadiusResult:
    """``(3 - sqrt 5) / 2``, the root in (0, 1) of ``r^2 - 3r + 1``."""
    v = 2.0 / (3.0 + math.sqrt(5.0))
    return RadiusResult(v, Method.CLOSED_FORM, abs(-1.0 + 3.0 * v - v * v))


def radius_deriv_starlike() -> RadiusResult:
    return RadiusResult(0.5, Method.CLOSED_FORM, 0.0)


def radius_Rm(m: float) -> RadiusResult:
    _check_m(m, 2.0)
    v = m / (2.0 + m)
    return RadiusResult(v, Method.CLOSED_FORM, abs((2.0 + m) * v - m))


def infimum_ratio(t: float, m: float) -> float:
    """``(1 - t^m) / (2 - t^2 - t^m)`` for ``t`` in [0, 1)."""
    return _ratio_h(1.0 - t, m)


def _ratio_h(h, m):
    # written in h = 1 - t so the 0/0 limit at t -> 1 keeps full precision
    with np.errstate(divide="ignore"):  # h = 1 gives log1p(-1) = -inf, num = 1
        num = -np.expm1(m * np.log1p(-h))
    return num / (h * (2.0 - h) + num)


def radius_Rm_via_infimum(m: float, n_grid: int = 4001) -> RadiusResult:
    """Numerical infimum of :func:`infimum_ratio` over ``t`` in [0, 1)."""
    _check_m(m, 2.0)
    h = np.unique(np.concatenate([np.logspace(-15, 0, n_grid), np.linspace(0.0, 1.0, n_grid)[1:]]))
    vals = _ratio_h(h, m)
    i = int(np.argmin(vals))
    lo, hi = h[max(i - 1, 0)], h[min(i + 1, len(h) - 1)]
    if i == 0:
        lo = h[0] * 0.5
    x, neg = golden_section_max(lambda s: -float(_ratio_h(s, m)), lo, hi, tol=1e-18)
    value, h_star = min((-neg, x), (float(vals[i]), float(h[i])))
    return RadiusResult(float(value), Method.INFIMUM, float(abs(value - m / (2.0 + m))),
                        argmin=float(1.0 - h_star))


def rstar_cubic(r: float) -> float:
    return ((3.0 * r - 5.0) * r - 3.0) * r + 1.0


def _rstar_cubic_prime(r: float) -> float:
    return (9.0 * r - 10.0) * r - 3.0


def radius_Rstar() -> RadiusResult:
    """Unique root in (0, 1) of ``3r^3 - 5r^2 - 3r + 1``."""
    v = bracketed_root(rstar_cubic, _rstar_cubic_prime, 0.0, 1.0)
    return RadiusResult(v, Method.ROOT_FIND, abs(rstar_cubic(v)))


def Q_alpha_r(alpha: float, r: float) -> float:
    return (4.0 * r**3 * alpha**2
            - (7.0 * r**3 + 3.0 * r**2 - 3.0 * r + 1.0) * alpha
            + 6.0 * r**3 - 2.0 * r**2 - 6.0 * r + 2.0)


def _ck_objective(x, k: int):
    return x * (1.0 + x) ** 2 * (1.0 - x * x) ** (2 * k - 2)


@lru_cache(maxsize=None)
def maximize_ck(k: int, n_grid: int = 100_001) -> tuple[float, float, float]:
    """``(max, argmax, grid max)`` of ``x (1+x)^2 (1-x^2)^(2k-2)`` on [0, 1]."""
    if int(k) != k or k < 1:
        raise DomainError(f"c_k needs an integer k >= 1, got {k!r}")
    x = np.linspace(0.0, 1.0, n_grid)
    vals = _ck_objective(x, k)
    i = int(np.argmax(vals))
    lo, hi = x[max(i - 1, 0)], x[min(i + 1, n_grid - 1)]
    xs, fs = golden_section_max(lambda s: float(_ck_objective(s, k)), float(lo), float(hi))
    grid_max = float(vals[i])
    if grid_max >= fs:
        return grid_max, float(x[i]), grid_max
    return fs, xs, grid_max


def c_k(k: int) -> float:
    return maximize_ck(k)[0]


def M_m(m: float) -> float:
    """``m (2 + m) / (4 (m + 1))``, equal to ``R_m / (1 - R_m^2)``."""
    _check_m(m, 1.0)
    return m * (2.0 + m) / (4.0 * (m + 1.0))


class LResult(NamedTuple):
    value: float
    admissible: bool


def L_condition(d: Sequence[float], m: float) -> LResult:
    """``L(d) = sum_k 2 (2k - 1) c_k d_k M_m^(2k)``; admissible iff ``L <= m``."""
    _check_m(m, 1.0)
    if any(di < 0 for di in d):
        raise DomainError(f"polynomial coefficients must be nonnegative, got {list(d)}")
    mm = M_m(m)
    total = 0.0
    for k, dk in enumerate(d, start=1):
        if dk:
            total += 2.0 * (2 * k - 1) * c_k(k) * dk * mm ** (2 * k)
    return LResult(total, total <= m + ADMISSIBLE_SLACK)
