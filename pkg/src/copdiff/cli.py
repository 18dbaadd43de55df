"""Command-line front end; every subcommand is a thin adapter over the library.

Exit codes: 0 success, 2 invalid spec or input (JSON error on stderr),
1 internal error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys

import numpy as np

from . import analysis, constructions, core, evc, pickands
from .specs import SpecError, load_copula, load_json, parse_measure


class InputError(Exception):
    def __init__(self, message: str, detail: dict | None = None):
        super().__init__(message)
        self.detail = detail or {}


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _emit_json(obj, out) -> None:
    json.dump(obj, out, indent=2)
    out.write("\n")


def _emit_csv(header, rows, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _open_out(path):
    if path in (None, "-"):
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", newline="")


# -- handlers ----------------------------------------------------------------


def cmd_pickands_validate(args):
    m = parse_measure(load_json(args.spec))
    report = pickands.validate_measure(m)
    if not report.passed:
        raise InputError("measure is not a Pickands dependence measure",
                         {"mass_residual": report.residuals["mass"],
                          "mean_residual": report.residuals["mean"]})
    with _open_out(args.output) as out:
        _emit_json({"mass": m.mass, "mean": m.mean, **report.to_dict()}, out)


def cmd_pickands_to_function(args):
    m = parse_measure(load_json(args.spec))
    report = pickands.validate_measure(m)
    if not report.passed:
        raise InputError("measure is not a Pickands dependence measure", report.to_dict())
    A = pickands.upsilon(m)
    t = np.linspace(0.0, 1.0, args.grid)
    rows = zip(t, A.value(t), A.d_plus(t), A.g(t))
    with _open_out(args.output) as out:
        _emit_csv(["t", "A", "DplusA", "GA"], rows, out)


def _evc(args):
    c = load_copula(args.spec)
    if not isinstance(c, evc.ExtremeValueCopula):
        raise InputError(f"expected an EVC spec, got family {c.family!r}")
    return c


def cmd_evc_eval(args):
    c = _evc(args)
    if args.x is not None and args.y is not None:
        with _open_out(args.output) as out:
            _emit_json({"x": args.x, "y": args.y, "cdf": c.cdf(args.x, args.y),
                        "kernel": c.kernel_cdf(args.x, args.y)}, out)
        return
    g = np.linspace(0.0, 1.0, args.grid)
    X, Y = np.meshgrid(g, g, indexing="ij")
    rows = zip(X.ravel(), Y.ravel(), c.cdf(X, Y).ravel(), c.kernel_cdf(X, Y).ravel())
    with _open_out(args.output) as out:
        _emit_csv(["x", "y", "C", "K"], rows, out)


def cmd_evc_sample(args):
    c = load_copula(args.spec)
    s = core.sample(c, args.n, args.seed)
    with _open_out(args.output) as out:
        core.write_sample_csv(s, out)


def cmd_evc_mass_decomp(args):
    c = _evc(args)
    try:
        masses = evc.component_masses(c)
    except evc.MeasureUnavailable as exc:
        raise InputError(str(exc)) from exc
    with _open_out(args.output) as out:
        _emit_json(masses.to_dict(), out)


def cmd_evc_support(args):
    c = _evc(args)
    xs = [args.x] if args.x is not None else list(np.linspace(0.0, 1.0, args.grid + 2)[1:-1])
    try:
        rows = [(x, *evc.support_bounds(c, x)) for x in xs]
    except evc.MeasureUnavailable as exc:
        raise InputError(str(exc)) from exc
    with _open_out(args.output) as out:
        if args.x is not None:
            _emit_json({"x": rows[0][0], "y_lo": rows[0][1], "y_hi": rows[0][2]}, out)
        else:
            _emit_csv(["x", "y_lo", "y_hi"], rows, out)


def cmd_metric(args):
    a = load_copula(args.a)
    b = load_copula(args.b)
    if args.kind == "d_inf":
        report = analysis.d_inf(a, b, args.grid)
    else:
        p = float("inf") if args.p in ("inf", "Inf") else float(args.p)
        report = analysis.d_p(a, b, p, args.grid)
    with _open_out(args.output) as out:
        _emit_json(report.to_dict(), out)


def cmd_approx(args):
    a = load_copula(args.spec)
    base = load_copula(args.base)
    cb = constructions.checkerboard_approx(a, args.N, base)
    with _open_out(args.output) as out:
        _emit_json(cb.to_spec(), out)


def cmd_diagnose_derivative(args):
    c = load_copula(args.spec)
    if args.csv:
        ys, plus, minus, gap = analysis.derivative_profile(c, args.x, args.grid)
        with _open_out(args.output) as out:
            _emit_csv(["y", "plus", "minus", "gap"], zip(ys, plus, minus, gap), out)
        return
    if args.y is None:
        raise InputError("--y is required unless --csv is given")
    probe = analysis.one_sided_partial(c, args.x, args.y, "both")
    with _open_out(args.output) as out:
        _emit_json(probe.to_dict(), out)


def cmd_diagnose_scan(args):
    c = load_copula(args.spec)
    hits = analysis.nondiff_scan(c, args.x, args.grid, args.threshold)
    with _open_out(args.output) as out:
        _emit_json({"x": args.x, "threshold": args.threshold,
                    "hits": [{"y": y, "gap": g} for y, g in hits]}, out)


def cmd_diagnose_schwarz(args):
    c = load_copula(args.spec)
    residual = analysis.schwarz_check(c, args.grid, args.h)
    with _open_out(args.output) as out:
        _emit_json({"grid_n": args.grid, "h": args.h, "max_residual": residual}, out)


# -- parser ------------------------------------------------------------------


def _unit(text: str) -> float:
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="copdiff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    io = argparse.ArgumentParser(add_help=False)
    io.add_argument("-o", "--output", default=None, help="output path (default stdout)")

    spec = argparse.ArgumentParser(add_help=False)
    spec.add_argument("spec", help="copula spec JSON file or one of M, W, Pi")
    spec.add_argument("--dump-spec", action="store_true", help="print the parsed spec and exit")

    pk = sub.add_parser("pickands").add_subparsers(dest="action", required=True)
    p = pk.add_parser("validate", parents=[io])
    p.add_argument("spec")
    p.set_defaults(func=cmd_pickands_validate)
    p = pk.add_parser("to-function", parents=[io])
    p.add_argument("spec")
    p.add_argument("--grid", type=_positive_int, default=1001)
    p.set_defaults(func=cmd_pickands_to_function)

    ev = sub.add_parser("evc").add_subparsers(dest="action", required=True)
    p = ev.add_parser("eval", parents=[io, spec])
    p.add_argument("--x", type=_unit)
    p.add_argument("--y", type=_unit)
    p.add_argument("--grid", type=_positive_int, default=11)
    p.set_defaults(func=cmd_evc_eval)
    p = ev.add_parser("sample", parents=[io, spec])
    p.add_argument("-n", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_evc_sample)
    p = ev.add_parser("mass-decomp", parents=[io, spec])
    p.set_defaults(func=cmd_evc_mass_decomp)
    p = ev.add_parser("support", parents=[io, spec])
    p.add_argument("--x", type=_unit)
    p.add_argument("--grid", type=_positive_int, default=99)
    p.set_defaults(func=cmd_evc_support)

    p = sub.add_parser("metric", parents=[io])
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--kind", choices=["d_inf", "d_p"], default="d_inf")
    p.add_argument("--p", default="1")
    p.add_argument("--grid", type=_positive_int, default=512)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("approx", parents=[io, spec])
    p.add_argument("-N", type=_positive_int, required=True)
    p.add_argument("--base", default="Pi")
    p.set_defaults(func=cmd_approx)

    dg = sub.add_parser("diagnose").add_subparsers(dest="action", required=True)
    p = dg.add_parser("derivative", parents=[io, spec])
    p.add_argument("--x", type=_unit, required=True)
    p.add_argument("--y", type=_unit)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--grid", type=_positive_int, default=201)
    p.set_defaults(func=cmd_diagnose_derivative)
    p = dg.add_parser("scan", parents=[io, spec])
    p.add_argument("--x", type=_unit, required=True)
    p.add_argument("--grid", type=_positive_int, default=201)
    p.add_argument("--threshold", type=float, default=1e-2)
    p.set_defaults(func=cmd_diagnose_scan)
    p = dg.add_parser("schwarz", parents=[io, spec])
    p.add_argument("--grid", type=_positive_int, default=21)
    p.add_argument("--h", type=float, default=1e-4)
    p.set_defaults(func=cmd_diagnose_schwarz)
    return parser


def _fail(code: int, kind: str, message: str, detail=None) -> int:
    _emit_json({"error": kind, "message": message, "detail": detail or {}}, sys.stderr)
    return code


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "dump_spec", False):
            with _open_out(args.output) as out:
                _emit_json(load_copula(args.spec).to_spec(), out)
        else:
            args.func(args)
    except (SpecError, InputError) as exc:
        return _fail(2, "invalid-input", str(exc), exc.detail)
    except (ValueError, NotImplementedError) as exc:
        return _fail(2, type(exc).__name__, str(exc))
    except Exception as exc:  # noqa: BLE001
        return _fail(1, "internal", f"{type(exc).__name__}: {exc}")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
