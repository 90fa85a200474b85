"""Command-line interface: ``qheis {geodesic,orbit,jacobian,maxwell,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import cutlocus, geodesic, io, symmetry, verify
from .geodesic import GeodesicParams

GEODESIC_COLUMNS = ["t", "b1", "b2", "b3", "b4", "a2", "a3", "a4", "h1", "h2", "h3", "h4", "b_norm2"]
ORBIT_COLUMNS = ["s", "t", "b1", "b2", "b3", "b4", "a2", "a3", "a4"]
JACOBIAN_COLUMNS = ["tau", "J_expanded", "J_factored", "f"]


class UsageError(Exception):
    pass


def parse_real(text: str) -> float:
    """Float, optionally written as a multiple of pi: ``2pi``, ``2*pi``, ``-pi/2``."""
    s = text.strip().lower().replace(" ", "")
    if "pi" in s:
        num, _, den = s.partition("/")
        coef_text = num.replace("*", "").replace("pi", "")
        coef = -1.0 if coef_text == "-" else 1.0 if coef_text in ("", "+") else float(coef_text)
        value = coef * math.pi
        return value / float(den) if den else value
    return float(s)


def parse_vector(text: str, n: int, flag: str) -> np.ndarray:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != n:
        raise UsageError(f"{flag} needs {n} comma-separated numbers, got {text!r}")
    try:
        return np.array([parse_real(p) for p in parts])
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def params_from_args(args) -> GeodesicParams:
    if args.paper_constants is not None:
        if args.covector is not None or args.c567 is not None:
            raise UsageError("--paper-constants excludes --covector/--c567")
        try:
            return geodesic.params_from_paper_constants(parse_vector(args.paper_constants, 7, "--paper-constants"))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.covector is None or args.c567 is None:
        raise UsageError("give either --covector and --c567, or --paper-constants")
    return geodesic.params_from_covector(
        parse_vector(args.covector, 4, "--covector"), parse_vector(args.c567, 3, "--c567")
    )


def _param_meta(gp: GeodesicParams) -> dict:
    return {"h0": gp.h0, "c567": gp.c567, "C": gp.C, "D": gp.D, "u": gp.u, "v": gp.v, "w": gp.w,
            "degenerate": gp.degenerate}


def _time_grid(args, samples_attr="samples") -> np.ndarray:
    n = getattr(args, samples_attr)
    if n < 2:
        raise UsageError("--samples must be at least 2")
    t_min, t_max = parse_real(args.t_min), parse_real(args.t_max)
    if not t_max > t_min:
        raise UsageError("--t-max must exceed --t-min")
    return np.linspace(t_min, t_max, n)


def geodesic_rows(gp: GeodesicParams, ts: np.ndarray) -> np.ndarray:
    base = geodesic.points(gp, ts)
    h = geodesic.vertical(gp, ts)
    b, a = base[:, 3:], base[:, :3]
    return np.column_stack([ts, b, a, h, np.sum(b * b, axis=1)])


def cmd_geodesic(args) -> int:
    gp = params_from_args(args)
    ts = _time_grid(args)
    rows = geodesic_rows(gp, ts)
    io.write_table(args.out, args.format, {"command": "geodesic", **_param_meta(gp)}, GEODESIC_COLUMNS, rows)
    return 0


def orbit_rows(gp: GeodesicParams, factor: str, axis: np.ndarray, ss: np.ndarray, ts: np.ndarray) -> np.ndarray:
    coeffs = np.concatenate([axis, np.zeros(3)]) if factor == "c" else np.concatenate([np.zeros(3), axis])
    rows = []
    for s in ss:
        image = symmetry.act_geodesic(symmetry.RotationPair.flow(coeffs, s), gp)
        base = geodesic.points(image, ts)
        rows.append(np.column_stack([np.full_like(ts, s), ts, base[:, 3:], base[:, :3]]))
    return np.vstack(rows)


def cmd_orbit(args) -> int:
    gp = params_from_args(args)
    if gp.degenerate:
        raise UsageError("orbit needs a non-degenerate geodesic (C > 0)")
    axis = parse_vector(args.axis, 3, "--axis")
    if not np.any(axis):
        raise UsageError("--axis must be non-zero")
    if args.s_samples < 1:
        raise UsageError("--s-samples must be positive")
    ss = np.linspace(parse_real(args.s_min), parse_real(args.s_max), args.s_samples)
    ts = _time_grid(args)
    rows = orbit_rows(gp, args.factor, axis, ss, ts)
    meta = {"command": "orbit", "factor": args.factor, "axis": axis, **_param_meta(gp)}
    io.write_table(args.out, args.format, meta, ORBIT_COLUMNS, rows)
    return 0


def cmd_jacobian(args) -> int:
    lo, hi = parse_real(args.tau_min), parse_real(args.tau_max)
    if not hi > lo or args.samples < 2:
        raise UsageError("need --tau-max > --tau-min and --samples >= 2")
    tau = np.linspace(lo, hi, args.samples)
    rows = np.column_stack([
        tau, cutlocus.jacobian_expanded(tau), cutlocus.jacobian_factored(tau), cutlocus.conjugate_factor(tau),
    ])
    tol = args.tolerance or 1e-12
    roots = cutlocus.jacobian_roots(max(lo, 0.0), hi, tol) if hi > cutlocus.TAU_MIN else []
    meta = {"command": "jacobian", "omitted_prefactor": cutlocus.OMITTED_PREFACTOR, "roots": [r.root for r in roots]}
    io.write_table(args.out, args.format, meta, JACOBIAN_COLUMNS, rows)
    return 0


def cmd_maxwell(args) -> int:
    gp = params_from_args(args)
    report = {"params": _param_meta(gp)}
    if gp.degenerate:
        report.update(maxwell_time=None, maxwell_point=None, cut_time=None, note="straight line: never loses optimality")
    else:
        tau = cutlocus.first_conjugate_tau(args.tolerance or 1e-10)
        report.update(
            maxwell_time=cutlocus.maxwell_time(gp),
            maxwell_point=cutlocus.maxwell_point(gp).to_array(),
            cut_time=cutlocus.cut_time(gp),
            first_conjugate_tau=tau.root,
            first_conjugate_time=tau.root / gp.C,
        )
    io.write_json(args.out, report)
    return 0


def cmd_verify(args) -> int:
    report = verify.run(seed=args.seed, tolerance=args.tolerance)
    io.write_json(args.out, report.to_dict())
    failed = [c for c in report.checks if not c.passed]
    for c in failed:
        print(f"FAIL {c.module}: {c.name} (residual {c.residual:.3g} > {c.tolerance:.3g})", file=sys.stderr)
    return 0 if report.passed else 1


def _add_params(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("geodesic parameters")
    g.add_argument("--covector", metavar="H1,H2,H3,H4", help="initial horizontal covector h(0)")
    g.add_argument("--c567", metavar="C5,C6,C7", help="vertical constants (use --c567=-1,0,0 for negatives)")
    g.add_argument("--paper-constants", metavar="C1,...,C7", help="integration constants C1..C7")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help="output path ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qheis", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("geodesic", help="sample a geodesic from the origin")
    _add_params(p)
    p.add_argument("--t-min", default="0")
    p.add_argument("--t-max", default="2pi")
    p.add_argument("--samples", type=int, default=100)
    _add_output(p)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("orbit", help="sample the orbit of a geodesic under a one-parameter rotation group")
    _add_params(p)
    p.add_argument("--factor", choices=("c", "d"), default="d", help="rotate with s1..s3 (c) or s4..s6 (d)")
    p.add_argument("--axis", required=True, metavar="Q1,Q2,Q3", help="generator coefficients")
    p.add_argument("--s-min", default="0")
    p.add_argument("--s-max", default="1")
    p.add_argument("--s-samples", type=int, default=11)
    p.add_argument("--t-min", default="0")
    p.add_argument("--t-max", default="2pi")
    p.add_argument("--samples", type=int, default=100)
    _add_output(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("jacobian", help="tabulate the conjugate-time Jacobian")
    p.add_argument("--tau-min", default="0")
    p.add_argument("--tau-max", default="4pi")
    p.add_argument("--samples", type=int, default=1001)
    p.add_argument("--tolerance", type=float, default=None, help="root tolerance")
    _add_output(p)
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("maxwell", help="Maxwell time and point, conjugate and cut time")
    _add_params(p)
    p.add_argument("--tolerance", type=float, default=None, help="root tolerance")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_maxwell)

    p = sub.add_parser("verify", help="run every invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=None, help="override every check's tolerance")
    p.add_argument("--out", default="-", help="JSON report path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qheis {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"qheis {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
