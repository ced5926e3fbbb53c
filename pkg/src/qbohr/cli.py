"""Command-line interface.

Exit codes: 0 success, 1 a verification came back violated, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .bohr import BohrParams, CoefficientClass, evaluate_functional
from .errors import DomainError
from .extremals import ExtremalSpec, Family, build, closed_form_value
from .harness import (Verdict, default_configurations, load_config, params_from_config, sweep,
                      verify)
from .quaternion import ONE, Quaternion
from .radii import L_condition, M_m, maximize_ck, radius_Rm_via_infimum
from .series import parse_series
from .theorems import get_theorem


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _int_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def _r_grid(text: str) -> list[float]:
    """``start:stop:step`` (inclusive) or a comma-separated list."""
    if ":" in text:
        start, stop, step = (float(x) for x in text.split(":"))
        if step <= 0:
            raise UsageError("grid step must be positive")
        n = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 15) for i in range(max(n, 0))]
    return _floats(text)


def _quaternion(text: str | None) -> Quaternion:
    if text is None:
        return ONE
    return Quaternion.from_seq(_floats(text))


def _write_json(path: str | None, payload) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(json.dumps(payload, indent=2) + "\n")


def _params(args, config: dict) -> BohrParams:
    data = dict(config)
    if getattr(args, "m", None) is not None:
        data["m"] = args.m
    if getattr(args, "d", None) is not None:
        data["d"] = _floats(args.d)
    return params_from_config(data)


# ---------------------------------------------------------------- subcommands

def cmd_radius(args, config) -> int:
    thm = get_theorem(args.theorem or config.get("theorem") or "")
    params = _params(args, config)
    m = params.m if thm.m_max is not None else 1.0
    res = thm.radius(m)
    print(f"theorem {thm.id}: radius = {res.value!r}")
    print(f"  method   = {res.method.value}")
    print(f"  residual = {res.residual:.3e}")
    payload = {"theorem": thm.id, "m": m, "value": res.value, "method": res.method.value,
               "residual": res.residual}
    if thm.m_max is not None:
        inf = radius_Rm_via_infimum(m)
        print(f"  infimum oracle = {inf.value!r} (|diff| = {abs(inf.value - res.value):.3e})")
        payload["infimum_oracle"] = inf.value
    _write_json(args.json, payload)
    return 0


def cmd_constants(args, config) -> int:
    ks = _int_range(args.ck)
    payload = {"c_k": {}}
    for k in ks:
        value, x, _ = maximize_ck(k)
        payload["c_k"][str(k)] = value
        print(f"c_{k} = {value!r}  (argmax x = {x:.12f})")
    m = args.m if args.m is not None else config.get("m")
    if m is not None:
        mm = M_m(m)
        payload["M_m"] = mm
        payload["m"] = m
        print(f"M_{m:g} = {mm!r}")
        d = _floats(args.d) if args.d is not None else config.get("d")
        if d is not None:
            L = L_condition(d, m)
            payload.update(d=list(d), L=L.value, admissible=L.admissible)
            print(f"L(d) = {L.value!r}  admissible = {L.admissible}")
    _write_json(args.json, payload)
    return 0


def _series_arg(args, config):
    if args.series is not None:
        return parse_series(args.series)
    if "series" in config:
        return parse_series(config["series"])
    raise UsageError("a series is required (--series or config key 'series')")


def cmd_sum(args, config) -> int:
    f = _series_arg(args, config)
    params = _params(args, config)
    cls = CoefficientClass(args.cls) if args.cls else None
    value, tail = evaluate_functional(args.functional, f, args.r, params, cls=cls, with_tail=True)
    print(f"{args.functional}(r={args.r!r}) = {value!r}  tail <= {tail.value:.3e}")
    _write_json(args.json, {"functional": args.functional, "r": args.r, "value": value,
                            "tail": tail.value})
    return 0


def cmd_sweep(args, config) -> int:
    params = _params(args, config)
    if args.family:
        target = ExtremalSpec(Family(args.family), args.a, _quaternion(args.u), args.order)
    elif args.cls:
        target = CoefficientClass(args.cls)
    else:
        target = _series_arg(args, config)
    table = sweep(target, args.functional, _r_grid(args.r), params, order=args.order)
    text = table.to_csv(args.csv)
    if not args.csv:
        sys.stdout.write(text)
    _write_json(args.json, [row.__dict__ for row in table.rows])
    return 0


def cmd_verify(args, config) -> int:
    theorem = args.theorem or config.get("theorem")
    opts = dict(samples=args.samples, n_radii=args.radii, order=args.order)
    if theorem:
        runs = [(theorem, _params(args, config))]
    else:
        runs = default_configurations()
    reports = []
    for tid, params in runs:
        rep = verify(tid, params, args.seed, **opts)
        reports.append(rep)
        mx = rep.max_value["value"] if rep.max_value else float("nan")
        wv = rep.witness["value"] if rep.witness else float("nan")
        print(f"theorem {rep.theorem_id:>3}  m={rep.params['m']:<5g} N={rep.params['n']}  "
              f"radius={rep.radius['value']:.12f}  max={mx:.15f}  witness={wv:.6f}  "
              f"{rep.verdict.value}" + (f"  [{rep.message}]" if rep.message else ""))
    if args.json:
        payload = reports[0].to_dict() if theorem else [r.to_dict() for r in reports]
        _write_json(args.json, payload)
    return 1 if any(r.verdict is Verdict.VIOLATED for r in reports) else 0


def cmd_extremal(args, config) -> int:
    spec = ExtremalSpec(Family(args.family), args.a, _quaternion(args.u), args.order)
    f = build(spec)
    payload = {"spec": spec.to_dict(), "series": f.to_literal()}
    shown = min(len(f), args.show)
    for k in range(shown):
        print(f"p_{k} = {f.coeffs[k].tolist()}")
    if shown < len(f):
        print(f"... ({len(f) - shown} more coefficients)")
    if args.functional and args.r is not None:
        params = _params(args, config)
        value = closed_form_value(spec.family, args.functional, args.r, spec.a, params.m, params.d)
        payload["closed_form"] = {"functional": args.functional, "r": args.r, "value": value}
        print(f"closed form {args.functional}(r={args.r!r}) = {value!r}")
    _write_json(args.json, payload)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--order", type=int, default=2048, metavar="K",
                        help="series truncation order (default 2048)")
    common.add_argument("--json", metavar="PATH", help="write a JSON result to PATH")
    common.add_argument("--csv", metavar="PATH", help="write a CSV table to PATH")
    common.add_argument("--config", metavar="PATH",
                        help="JSON config with keys theorem, m, n, d, weight, series")

    parser = argparse.ArgumentParser(prog="qbohr", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radius", parents=[common], help="print a theorem's radius")
    p.add_argument("--theorem")
    p.add_argument("--m", type=float)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("constants", parents=[common], help="c_k, M_m and L(d)")
    p.add_argument("--ck", default="1..5", help="k values: '1..5' or '1,2,3'")
    p.add_argument("--m", type=float)
    p.add_argument("--d", help="comma-separated polynomial coefficients d_1..d_N")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("sum", parents=[common], help="evaluate a functional on one series")
    p.add_argument("--series", help="JSON literal [[x0,x1,x2,x3], ...]")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--functional", default="sum", choices=["sum", "A", "B", "K", "L", "M", "N", "S"])
    p.add_argument("--m", type=float)
    p.add_argument("--d")
    p.add_argument("--class", dest="cls", choices=[c.value for c in CoefficientClass])
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("sweep", parents=[common], help="tabulate a functional over radii")
    p.add_argument("--family", choices=[f.value for f in Family])
    p.add_argument("--a", type=float)
    p.add_argument("--u", help="unit quaternion x0,x1,x2,x3")
    p.add_argument("--class", dest="cls", choices=[c.value for c in CoefficientClass])
    p.add_argument("--series")
    p.add_argument("--functional", required=True, choices=["sum", "A", "B", "K", "L", "M", "N", "S"])
    p.add_argument("--r", required=True, help="'start:stop:step' or comma list")
    p.add_argument("--m", type=float)
    p.add_argument("--d")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="certify a theorem (default: all)")
    p.add_argument("--theorem")
    p.add_argument("--m", type=float)
    p.add_argument("--d")
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--radii", type=int, default=32)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extremal", parents=[common], help="coefficients of an extremal family")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--a", type=float)
    p.add_argument("--u")
    p.add_argument("--functional", choices=["sum", "A", "B", "K", "L", "M", "N", "S"])
    p.add_argument("--r", type=float)
    p.add_argument("--m", type=float)
    p.add_argument("--d")
    p.add_argument("--show", type=int, default=8, help="coefficients to print")
    p.set_defaults(func=cmd_extremal)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config) if args.config else {}
        return args.func(args, config)
    except (DomainError, UsageError, ValueError, OSError) as exc:
        print(f"qbohr {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
