"""Theorem-level certification runs and radius sweeps.

``verify`` evaluates a theorem's functional below its radius on the paired
extremal family (across its ``a`` ladder and the ladder limit) and on seeded
samples of the coefficient class, then looks for a sharpness witness just
beyond the radius.  Reports are plain data and serialize deterministically.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from . import bohr
from .bohr import BohrParams, CoefficientClass, Monomial, UserSeries
from .errors import DomainError, NoWitnessError
from .extremals import LADDERS, ExtremalSpec, Family, build, ladder_limit, sharpness_witness
from .quaternion import ONE, Quaternion
from .radii import L_condition, M_m, c_k
from .series import DEFAULT_ORDER, QSeries
from .theorems import THEOREMS, get_theorem

SCHEMA = 1
CERTIFY_TOL = 1e-9
WITNESS_OFFSET = 0.01

FAMILY_CLASS = {
    Family.STARLIKE_KOEBE: CoefficientClass.STARLIKE,
    Family.GEOM_CAYLEY: CoefficientClass.DERIV_STARLIKE,
    Family.MOBIUS_LIKE: CoefficientClass.BOUNDED,
    Family.HALF_SPACE_MAP: CoefficientClass.HALF_SPACE,
}


class Verdict(str, Enum):
    CERTIFIED = "certified"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


@dataclass
class VerificationReport:
    theorem_id: str
    params: dict
    radius: dict
    grid: dict
    max_value: dict | None
    tail_bound: float | None
    witness: dict | None
    verdict: Verdict
    message: str = ""

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "theorem_id": self.theorem_id,
            "params": self.params,
            "radius": self.radius,
            "grid": self.grid,
            "max_value": self.max_value,
            "tail_bound": self.tail_bound,
            "witness": self.witness,
            "verdict": self.verdict.value,
            "message": self.message,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


# ---------------------------------------------------------------- batch evaluation

def _batch_values(functional: str, coeffs: np.ndarray, radii: np.ndarray, params: BohrParams):
    """Functional values and remainder bounds, shape ``(samples, radii)``.

    Remainders use the class bound of ``functional``'s paired class and
    are filled in by :func:`_batch_tails`.
    """
    mod = np.sqrt(np.einsum("skc,skc->sk", coeffs, coeffs))
    K = mod.shape[1] - 1
    if functional in ("sum", "A", "B"):
        W = bohr.weight_majorants(None, radii, K)
        return mod[:, :1] + bohr._eval_linear(mod, W), None
    if functional == "N":
        return bohr._eval_N(coeffs[:, 0, 0], mod, radii), None
    W = bohr.weight_majorants(params.weight, radii, K)
    if functional == "K":
        return bohr._eval_K(mod, W, params.m), None
    if functional == "L":
        return bohr._eval_L(mod, W, params.m), None
    if functional == "M":
        area = bohr._eval_area(mod, radii)
        return bohr._eval_K(mod, W, params.m) + bohr.poly_Q(params.d, area), area
    raise DomainError(f"unknown functional {functional!r}")


def _batch_tails(functional: str, cls: CoefficientClass, coeffs: np.ndarray, radii: np.ndarray,
                 params: BohrParams, area=None) -> np.ndarray:
    K = coeffs.shape[1] - 1
    if cls is CoefficientClass.HALF_SPACE:
        p0 = coeffs[:, 0, 0]
    else:
        p0 = np.sqrt((coeffs[:, 0] ** 2).sum(axis=1))
    out = np.empty((coeffs.shape[0], len(radii)))
    for s in range(coeffs.shape[0]):
        out[s] = bohr._tails(functional, cls, K, radii, float(p0[s]), params.m, params.d,
                             None if area is None else area[s])
    return out


# ---------------------------------------------------------------- verify

def _params_dict(thm, params: BohrParams) -> dict:
    weight = params.weight
    if isinstance(weight, Monomial):
        wdesc = {"family": "monomial", "u": list(weight.u.as_tuple())}
    else:
        wdesc = {"family": "user_series", "series": [s.to_literal() for s in weight.series]}
    return {
        "m": params.m,
        "n": params.N,
        "d": list(params.d),
        "class": thm.cls.value,
        "functional": thm.functional,
        "weight": wdesc,
    }


def verify(theorem_id: str, params: BohrParams | None = None, seed: int = 0, *,
           samples: int = 256, n_radii: int = 32, order: int = DEFAULT_ORDER,
           u: Quaternion = ONE) -> VerificationReport:
    """Certify one theorem on a radius grid up to its radius.

    Raises :class:`DomainError` for unknown theorems or out-of-range
    parameters; an inadmissible polynomial for theorem 1.6 yields an
    inconclusive report instead.
    """
    thm = get_theorem(theorem_id)
    params = BohrParams() if params is None else params
    m = params.m if thm.m_max is not None else 1.0
    rad = thm.radius(m)
    radius = rad.value
    radii = radius * np.arange(1, n_radii + 1) / n_radii
    report = VerificationReport(
        theorem_id=thm.id,
        params=_params_dict(thm, params),
        radius={"value": radius, "method": rad.method.value, "residual": rad.residual},
        grid={"r_values": radii.tolist(), "samples": samples, "seed": seed, "order": order},
        max_value=None, tail_bound=None, witness=None, verdict=Verdict.INCONCLUSIVE)

    if thm.functional == "M":
        L = L_condition(params.d, m)
        report.params["L"] = L.value
        if not L.admissible:
            report.message = f"L(d) > m: L = {L.value!r}, m = {m!r}"
            return report
    if isinstance(params.weight, UserSeries):
        bohr.validate_weight(params.weight)

    candidates = []  # (value + tail, value, tail, r, source)

    def collect(values, tails, labels):
        # ties resolve toward the largest radius
        total = (values + tails)[:, ::-1]
        idx = np.unravel_index(int(np.argmax(total)), total.shape)
        idx = (idx[0], len(radii) - 1 - idx[1])
        total = total[:, ::-1]
        candidates.append((float(total[idx]), float(values[idx]), float(tails[idx]),
                           float(radii[idx[1]]), labels[idx[0]]))

    # extremal family, its ladder, and the ladder limit
    family = thm.family
    ladder = LADDERS[family][0] if family.has_parameter else (None,)
    for a in ladder:
        spec = ExtremalSpec(family, a, u, order)
        c = build(spec).coeffs[None]
        values, area = _batch_values(thm.functional, c, radii, params)
        tails = _batch_tails(thm.functional, FAMILY_CLASS[family], c, radii, params, area)
        label = family.value if a is None else f"{family.value} a={a!r}"
        collect(values, tails, [label])
    if family.has_parameter:
        limit = np.array([[ladder_limit(family, thm.functional, float(r), m, params.d)
                           for r in radii]])
        collect(limit, np.zeros_like(limit), [f"{family.value} ladder limit"])

    # seeded class samples: first half interior, second half on the coefficient bounds
    rng = np.random.default_rng(seed)
    n_boundary = samples // 2
    batches = [bohr._sample_batch(thm.cls, order, samples - n_boundary, rng, boundary=False),
               bohr._sample_batch(thm.cls, order, n_boundary, rng, boundary=True)]
    coeffs = np.concatenate(batches)
    values, area = _batch_values(thm.functional, coeffs, radii, params)
    tails = _batch_tails(thm.functional, thm.cls, coeffs, radii, params, area)
    collect(values, tails, [f"sample {i}" for i in range(samples)])

    best = max(candidates, key=lambda t: t[0])
    report.max_value = {"value": best[1], "r": best[3], "source": best[4]}
    report.tail_bound = best[2]

    try:
        w = sharpness_witness(thm.id, radius + WITNESS_OFFSET, m, params.d, u, order)
        report.witness = w.to_dict()
    except NoWitnessError as exc:
        report.message = str(exc)

    if best[0] > 1.0 + CERTIFY_TOL:
        report.verdict = Verdict.VIOLATED
        report.message = f"functional reaches {best[0]!r} > 1 at r = {best[3]!r} ({best[4]})"
    elif report.witness is not None:
        report.verdict = Verdict.CERTIFIED
    return report


def default_d_ladder(m: float) -> list[tuple[float, ...]]:
    """Polynomials of degree 1, 2 and 3 scaled onto the boundary ``L(d) = m``."""
    mm = M_m(m)
    unit = [m / (2.0 * (2 * k - 1) * c_k(k) * mm ** (2 * k)) for k in (1, 2, 3)]
    return [
        (unit[0],),
        (unit[0] / 2.0, unit[1] / 2.0),
        (unit[0] / 3.0, unit[1] / 3.0, unit[2] / 3.0),
    ]


def default_configurations() -> list[tuple[str, BohrParams]]:
    configs = []
    for thm in THEOREMS.values():
        for m in thm.m_ladder:
            if thm.functional == "M":
                configs.extend((thm.id, BohrParams(m, d)) for d in default_d_ladder(m))
            else:
                configs.append((thm.id, BohrParams(m)))
    return configs


def verify_all(seed: int = 0, **kwargs) -> list[VerificationReport]:
    return [verify(tid, params, seed, **kwargs) for tid, params in default_configurations()]


# ---------------------------------------------------------------- sweep

@dataclass(frozen=True)
class SweepRow:
    r: float
    value: float
    tail: float
    margin: float


@dataclass
class SweepTable:
    rows: list[SweepRow] = field(default_factory=list)

    def to_csv(self, out=None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["r", "value", "tail", "margin"])
        for row in self.rows:
            writer.writerow([f"{row.r:.17g}", f"{row.value:.17g}", f"{row.tail:.17g}",
                             f"{row.margin:.17g}"])
        text = buf.getvalue()
        if out is not None:
            with open(out, "w", newline="") as fh:
                fh.write(text)
        return text


def _check_grid(r_grid: Iterable[float]) -> np.ndarray:
    radii = np.asarray(list(r_grid), dtype=float)
    if radii.size == 0:
        return radii
    if radii.min() < 0.0 or radii.max() >= 1.0:
        raise DomainError(f"sweep radii must lie in [0, 1), got {radii.tolist()}")
    if np.any(np.diff(radii) <= 0):
        raise DomainError("sweep radii must be strictly increasing")
    return radii


def _class_supremum(cls: CoefficientClass, functional: str, radii: np.ndarray,
                    params: BohrParams, order: int, n_p0: int = 1001):
    """Largest majorant over members whose coefficients sit on the class bounds."""
    if cls.normalized:
        p0s = [0.0]
    else:
        p0s = np.linspace(0.0, 1.0, n_p0)[:-1]
    coeffs = np.zeros((len(p0s), order + 1, 4))
    for s, t in enumerate(p0s):
        coeffs[s, :, 0] = cls.bounds(order, float(t))
    if cls.normalized:
        coeffs[:, 1, 0] = 1.0
    values, area = _batch_values(functional, coeffs, radii, params)
    tails = _batch_tails(functional, cls, coeffs, radii, params, area)
    best = np.argmax(values + tails, axis=0)
    cols = np.arange(len(radii))
    return values[best, cols], tails[best, cols]


def sweep(target: ExtremalSpec | QSeries | CoefficientClass | str, functional: str,
          r_grid: Sequence[float], params: BohrParams | None = None, *,
          cls: CoefficientClass | None = None, order: int = DEFAULT_ORDER) -> SweepTable:
    """Tabulate ``(r, value, tail, 1 - value)`` for a function, extremal, or class supremum."""
    params = BohrParams() if params is None else params
    radii = _check_grid(r_grid)
    if radii.size == 0:
        return SweepTable([])
    if isinstance(target, (CoefficientClass, str)):
        values, tails = _class_supremum(CoefficientClass(target), functional, radii, params, order)
    else:
        if isinstance(target, ExtremalSpec):
            cls = FAMILY_CLASS[target.family] if cls is None else cls
            target = build(target)
        cls = bohr._default_class(functional) if cls is None else CoefficientClass(cls)
        c = target.coeffs[None]
        values, area = _batch_values(functional, c, radii, params)
        tails = _batch_tails(functional, cls, c, radii, params, area)
        values, tails = values[0], tails[0]
    return SweepTable([SweepRow(float(r), float(v), float(t), float(1.0 - v))
                       for r, v, t in zip(radii, values, tails)])


def load_config(path) -> dict:
    """Read a JSON config ``{theorem, m, n, d, weight, series}``; missing keys are omitted."""
    with open(path) as fh:
        data = json.load(fh)
    unknown = set(data) - {"theorem", "m", "n", "d", "weight", "series"}
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    return data


def params_from_config(data: dict) -> BohrParams:
    from .series import parse_series

    d = list(data.get("d", []))
    n = data.get("n")
    if n is not None:
        if len(d) > n:
            raise DomainError(f"d has {len(d)} coefficients but n = {n}")
        d += [0.0] * (n - len(d))
    weight = data.get("weight", "monomial")
    if weight in (None, "monomial"):
        w = Monomial()
    elif isinstance(weight, dict) and "u" in weight:
        w = Monomial(Quaternion.from_seq(weight["u"]))
    elif isinstance(weight, list):
        w = UserSeries(tuple(parse_series(s) for s in weight))
    else:
        raise DomainError(f"unrecognized weight {weight!r}")
    return BohrParams(float(data.get("m", 1.0)), tuple(d), w)
