"""``confluentia`` command line.

Exit codes: 0 ok, 2 usage/parse error, 3 invalid ODE, 4 eigenvalue did not
converge, 5 confluence sweep not monotone, 6 MRA defect above tolerance.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import contraction, mra
from .algebra import OdeSpec
from .contraction import AlgebraElement
from .exceptions import ConfluentiaError, MalformedInput, NoConvergence
from .singularity import classify
from .special import Parity, mathieu_eigenpair

EXIT_OK, EXIT_USAGE, EXIT_INVALID_ODE, EXIT_NO_CONVERGENCE, EXIT_NOT_MONOTONE, EXIT_MRA = 0, 2, 3, 4, 5, 6


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """``"0..2"`` -> [0, 1, 2]; ``"1,3"`` -> [1, 3]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer range {text!r}") from exc


def parse_floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad number list {text!r}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    try:
        text = Path(args.ode).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.ode}: {exc}") from exc
    try:
        spec = OdeSpec.from_json(text)
    except MalformedInput as exc:
        raise UsageError(str(exc)) from exc
    try:
        report = classify(spec)
    except ConfluentiaError as exc:
        print(f"invalid ODE: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID_ODE
    _emit(report.to_json() + "\n", args.out)
    return EXIT_OK


MATHIEU_FIELDS = ("parity", "n", "q", "a", "K", "residual")


def cmd_mathieu(args) -> int:
    parity = Parity.parse(args.parity)
    orders = parse_range(args.n)
    if any(n < 0 for n in orders) or (parity is Parity.ODD and 0 in orders):
        raise UsageError("orders start at 0 for even and at 1 for odd parity")
    qs = parse_floats(args.q)
    if any(q < 0 for q in qs):
        raise UsageError("q must be non-negative")
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=MATHIEU_FIELDS, lineterminator="\n")
    writer.writeheader()
    failed = False
    for n in orders:
        for q in qs:
            try:
                e = mathieu_eigenpair(parity, n, q)
                writer.writerow({"parity": parity.value, "n": n, "q": q, "a": repr(e.a),
                                 "K": e.truncation, "residual": f"{e.recursion_residual():.3e}"})
            except NoConvergence:
                failed = True
                print(f"no convergence for n={n} q={q}", file=sys.stderr)
                writer.writerow({"parity": parity.value, "n": n, "q": q, "a": "", "K": "", "residual": ""})
    _emit(buf.getvalue(), args.out)
    return EXIT_NO_CONVERGENCE if failed else EXIT_OK


def cmd_confluence(args) -> int:
    alphas = parse_floats(args.alphas)
    if not alphas or any(a <= 0 for a in alphas) or any(b >= a for a, b in zip(alphas, alphas[1:])):
        raise UsageError("alphas must be positive and strictly decreasing")
    if args.h <= 0 or args.n_max < 0 or args.psi_max <= 0:
        raise UsageError("need h > 0, n-max >= 0 and psi-max > 0")
    try:
        records = contraction.confluence_sweep(args.n_max, args.h, alphas, (-args.psi_max, args.psi_max),
                                               args.grid_size)
    except NoConvergence as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    if args.out:
        contraction.write_sweep_csv(records, args.out)
        script = Path(args.out).with_suffix(".gp")
        script.write_text(contraction.gnuplot_script(args.out, args.n_max, Path(args.out).with_suffix(".png").name))
    else:
        contraction.write_sweep_csv(records, sys.stdout)
    if len(alphas) > 1:
        bad = [k for k, ok in contraction.sweep_monotone(records).items() if not ok]
        if bad:
            for n, parity in bad:
                print(f"sup error not decreasing for n={n} {parity}", file=sys.stderr)
            return EXIT_NOT_MONOTONE
    return EXIT_OK


def _direction(text: str) -> AlgebraElement:
    vals = parse_floats(text)
    if len(vals) != 3:
        raise UsageError("--x needs three comma separated coordinates p,q,e")
    return AlgebraElement(*vals)


def cmd_mra(args) -> int:
    if args.check == "window":
        report = mra.window_checks(grid=args.grid)
        bad = [k for k, tol in mra.WINDOW_TOLERANCES.items() if report[k] > tol] + \
              ([] if report["strict_ramp"] else ["strict_ramp"])
        _emit(mra.window_report_json(report) + "\n", args.out)
    elif args.check == "ops":
        report = mra.ops_checks(alpha=args.alpha, n=args.grid_points, lam=args.lam, seed=args.seed)
        bad = [k for k, tol in mra.OPS_TOLERANCES.items() if report[k] > tol]
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        alphas = parse_floats(args.alphas)
        if not alphas or any(b >= a for a, b in zip(alphas, alphas[1:])) or alphas[-1] <= 0:
            raise UsageError("alphas must be positive and strictly decreasing")
        u, v = mra.hermite_pair(args.u, args.v, args.h)
        directions = [_direction(args.x)] if args.x else \
            [AlgebraElement(1, 0, 0), AlgebraElement(0, 1, 0), AlgebraElement(0, 0, 1)]
        rows, bad = [], []
        for x in directions:
            table = mra.convergence_harness(u, v, x, args.h, alphas)
            rows.extend(table)
            if any(b.err_sup >= a.err_sup for a, b in zip(table, table[1:])):
                bad.append(table[0].direction())
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=mra.HARNESS_FIELDS, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow(r.as_row())
        _emit(buf.getvalue(), args.out)
    if bad:
        print(f"defects above tolerance: {', '.join(bad)}", file=sys.stderr)
        return EXIT_MRA
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="confluentia", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="singular points and s-multisymbol of an ODE (JSON)")
    p.add_argument("--ode", required=True, help="ODE description in JSON")
    p.add_argument("--out", help="report path (default: stdout)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("mathieu", help="characteristic values of ce_n/se_n")
    p.add_argument("--parity", default="even", choices=["even", "odd"])
    p.add_argument("--n", default="0..2", help="orders, e.g. 0..2 or 1,3")
    p.add_argument("--q", default="0,1,100", help="comma separated q values")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_mathieu)

    p = sub.add_parser("confluence", help="Mathieu to Hermite-Gaussian confluence sweep")
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--alphas", default="0.8,0.4,0.2,0.1")
    p.add_argument("--psi-max", type=float, default=2.0)
    p.add_argument("--grid-size", type=int, default=201)
    p.add_argument("--out", help="CSV path; a gnuplot script is written next to it")
    p.set_defaults(func=cmd_confluence)

    p = sub.add_parser("mra", help="multiresolution checks")
    p.add_argument("--check", required=True, choices=["window", "ops", "converge"])
    p.add_argument("--grid", type=int, default=4096, help="window check grid")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--lam", type=float, default=0.0)
    p.add_argument("--grid-points", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alphas", default="0.5,0.25,0.125")
    p.add_argument("--h", type=float, default=1.0)
    p.add_argument("--u", type=int, default=0, help="Hermite index of u")
    p.add_argument("--v", type=int, default=1, help="Hermite index of v")
    p.add_argument("--x", help="direction p,q,e (default: each basis direction)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_mra)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
