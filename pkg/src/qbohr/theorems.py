"""Registry of the certified inequalities.

Each entry binds a functional, the coefficient class it is certified over,
the extremal family that shows sharpness, and the radius.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .bohr import CoefficientClass
from .errors import DomainError
from .extremals import Family
from .radii import (RadiusResult, radius_classical, radius_deriv_starlike, radius_Rm,
                    radius_Rstar, radius_starlike)


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    functional: str
    cls: CoefficientClass
    family: Family
    _radius: Callable[[float], RadiusResult]
    #: upper end of the admissible exponent range, None when m does not enter
    m_max: float | None = None
    #: exponents exercised by the default configuration
    m_ladder: tuple[float, ...] = (1.0,)

    def radius(self, m: float = 1.0) -> RadiusResult:
        self.check_m(m)
        return self._radius(m)

    def check_m(self, m: float) -> None:
        if self.m_max is not None and not 0.0 < m <= self.m_max:
            raise DomainError(f"theorem {self.id} needs m in (0, {self.m_max:g}], got {m}")


THEOREMS: dict[str, TheoremSpec] = {
    t.id: t for t in (
        TheoremSpec("B", "sum", CoefficientClass.BOUNDED, Family.MOBIUS_LIKE,
                    lambda m: radius_classical()),
        TheoremSpec("1.1", "A", CoefficientClass.STARLIKE, Family.STARLIKE_KOEBE,
                    lambda m: radius_starlike()),
        TheoremSpec("1.2", "B", CoefficientClass.DERIV_STARLIKE, Family.GEOM_CAYLEY,
                    lambda m: radius_deriv_starlike()),
        # close-to-convex functions obey the same |p_k| <= k bound as starlike ones
        TheoremSpec("1.3", "A", CoefficientClass.STARLIKE, Family.STARLIKE_KOEBE,
                    lambda m: radius_starlike()),
        TheoremSpec("1.4", "K", CoefficientClass.BOUNDED, Family.MOBIUS_LIKE, radius_Rm,
                    2.0, (0.1, 0.25, 0.5, 1.0, 1.5, 2.0)),
        TheoremSpec("1.5", "L", CoefficientClass.BOUNDED, Family.MOBIUS_LIKE, radius_Rm,
                    1.0, (0.1, 0.25, 0.5, 1.0)),
        TheoremSpec("1.6", "M", CoefficientClass.BOUNDED, Family.MOBIUS_LIKE, radius_Rm,
                    1.0, (0.5, 1.0)),
        TheoremSpec("1.7", "N", CoefficientClass.HALF_SPACE, Family.HALF_SPACE_MAP,
                    lambda m: radius_Rstar()),
    )
}

ALIASES = {"b": "B", "thmb": "B", "bs-thm-1.3": "1.6"}


def get_theorem(theorem_id: str) -> TheoremSpec:
    key = str(theorem_id).strip()
    key = ALIASES.get(key.lower(), key)
    if key not in THEOREMS:
        raise DomainError(f"unknown theorem {theorem_id!r}; expected one of {sorted(THEOREMS)}")
    return THEOREMS[key]
