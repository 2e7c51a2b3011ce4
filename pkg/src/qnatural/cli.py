"""Command-line front end.

Exit codes: 0 ok, 2 usage or parse error, 3 unsupported mathematics,
4 a verification check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from .alphaseries import DEFAULT_ORDER, DEFAULT_TOL, series_eval
from .errors import ConvergenceError, DomainError, ModeError, UnsupportedError
from .inverse import invert
from .odesolver import solve_ivp
from .oracle import DEFAULT_J, beta_numeric, gamma_numeric
from .qcore import EXACT, FLOAT, QParams, parse_scalar, beta_qa, bnk_table, gamma_qa, q_alpha_factorial, qa_number
from .serialize import (
    SchemaError,
    canonical_json,
    params_from_json,
    problem_from_json,
    scalar_out,
    series_from_json,
    time_expr_from_json,
    time_expr_to_json,
    transform_from_json,
    transform_to_json,
)
from .transform import natural_series, natural_time_expr
from .verification import run_suite

EXIT_OK, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_VERIFY = 0, 2, 3, 4

DEFAULT_Q, DEFAULT_ALPHA = "1/4", "1/2"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    params: QParams
    order: int
    J: int
    tol: float
    fmt: str | None


def _config(args) -> RunConfig:
    if args.mode == FLOAT:
        p = QParams.floating(args.q, args.alpha)
        if args.Q is not None and abs(parse_scalar(args.Q, FLOAT) - p.Q) > 1e-12:
            raise UsageError(f"--Q {args.Q} is not q**alpha = {p.Q!r}")
    else:
        p = QParams.exact(args.q, args.alpha, args.Q)
    if args.order < 1:
        raise UsageError("--order must be positive")
    return RunConfig(p, args.order, args.J, args.tol, args.format)


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _emit_json(obj) -> None:
    sys.stdout.write(canonical_json(obj) + "\n")


def _json_cell(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _json_rows(header: list[str], rows: list[list]) -> list[dict]:
    return [{h: _json_cell(x) for h, x in zip(header, r)} for r in rows]


def _emit_rows(header: list[str], rows: list[list], fmt: str) -> None:
    if fmt == "json":
        _emit_json(_json_rows(header, rows))
        return
    rows = [[_cell(x) for x in r] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
        return
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    for r in [header] + rows:
        sys.stdout.write("  ".join(str(x).ljust(n) for x, n in zip(r, widths)).rstrip() + "\n")


def _parse_sample(text: str) -> list[float]:
    try:
        t0, t1, n = text.split(",")
        t0, t1, n = float(Fraction(t0)), float(Fraction(t1)), int(n)
    except ValueError as exc:
        raise UsageError(f"--sample expects t0,t1,n, got {text!r}") from exc
    if n < 1 or t0 < 0 or t1 < t0:
        raise UsageError("--sample needs 0 <= t0 <= t1 and n >= 1")
    if n == 1:
        return [t0]
    return [t0 + (t1 - t0) * i / (n - 1) for i in range(n)]


def _closed(expr, t: float, p: QParams) -> float | None:
    # product forms are valid beyond the series radius; poles give inf
    if expr is None:
        return None
    try:
        return expr.evaluate(t, p)
    except ZeroDivisionError:
        return math.inf


def _sample_rows(series, ts: list[float], tol: float, expr=None) -> list[list]:
    rows = []
    for t in ts:
        v = series_eval(series, t, tol)
        closed = _closed(expr, t, series.params)
        rows.append([t, v.value, v.tail, v.converged, closed])
    return rows


SAMPLE_HEADER = ["t", "value", "tail", "converged", "closed"]


# -- commands -----------------------------------------------------------------------


def _special(cfg: RunConfig, exact_value, report) -> int:
    fmt = cfg.fmt or "text"
    out = {"value": scalar_out(exact_value), "float": float(exact_value)}
    ok = True
    if report is not None:
        rel = abs(report.value - float(exact_value)) / abs(float(exact_value))
        ok = rel < 1e-6
        out["verify"] = dict(report.to_json(), rel_err=rel, passed=ok)
    if fmt == "json":
        _emit_json(out)
    elif fmt == "csv":
        _emit_rows(list(out)[:2], [[out["value"], out["float"]]], "csv")
    else:
        sys.stdout.write(f"{out['value']}\n{out['float']!r}\n")
        if report is not None:
            status = "PASS" if ok else "FAIL"
            sys.stdout.write(f"{status} oracle {report.value!r} rel_err {out['verify']['rel_err']:.3e}\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_gamma(args, cfg: RunConfig) -> int:
    if args.n < 1:
        raise UsageError(f"gamma needs a positive integer, got {args.n}")
    value = gamma_qa(args.n, cfg.params)
    report = gamma_numeric(args.n, cfg.params, cfg.J) if args.verify else None
    return _special(cfg, value, report)


def cmd_beta(args, cfg: RunConfig) -> int:
    if args.m < 1 or args.n < 1:
        raise UsageError(f"beta needs positive integers, got {args.m}, {args.n}")
    value = beta_qa(args.m, args.n, cfg.params)
    report = beta_numeric(args.m, args.n, cfg.params, cfg.J) if args.verify else None
    return _special(cfg, value, report)


def _load_series(data, cfg: RunConfig):
    if isinstance(data, dict) and "alpha_series" in data:
        return series_from_json(data, cfg.params), None
    expr = time_expr_from_json(data, cfg.params)
    return expr.to_series(cfg.order, cfg.params), expr


def cmd_eval(args, cfg: RunConfig) -> int:
    series, expr = _load_series(_read_json(args.input), cfg)
    if args.sample:
        ts = _parse_sample(args.sample)
    elif args.t:
        try:
            ts = [float(Fraction(x)) for x in args.t.split(",")]
        except ValueError as exc:
            raise UsageError(f"--t expects comma-separated numbers, got {args.t!r}") from exc
    else:
        raise UsageError("eval needs --t or --sample")
    if any(t < 0 for t in ts):
        raise UsageError("evaluation points must be nonnegative")
    _emit_rows(SAMPLE_HEADER, _sample_rows(series, ts, cfg.tol, expr), cfg.fmt or "csv")
    return EXIT_OK


def cmd_transform(args, cfg: RunConfig) -> int:
    data = _read_json(args.input)
    if isinstance(data, dict) and "alpha_series" in data:
        R = natural_series(series_from_json(data, cfg.params))
    else:
        R = natural_time_expr(time_expr_from_json(data, cfg.params), cfg.params, cfg.order)
    _emit_json(transform_to_json(R))
    return EXIT_OK


def cmd_invert(args, cfg: RunConfig) -> int:
    R = transform_from_json(_read_json(args.input), cfg.params)
    _emit_json(time_expr_to_json(invert(R, cfg.params)))
    return EXIT_OK


def cmd_solve(args, cfg: RunConfig) -> int:
    data = _read_json(args.input)
    if not isinstance(data, dict):
        raise SchemaError("problem must be a JSON object")
    p = cfg.params
    if "params" in data:
        p = params_from_json(data["params"], p.mode)
    sol = solve_ivp(problem_from_json(data, p), p)
    fmt = cfg.fmt or "json"
    if not args.sample:
        _emit_json(time_expr_to_json(sol))
        return EXIT_OK
    rows = _sample_rows(sol.to_series(cfg.order, p), _parse_sample(args.sample), cfg.tol, sol)
    if fmt == "json":
        out = time_expr_to_json(sol)
        out["samples"] = _json_rows(SAMPLE_HEADER, rows)
        _emit_json(out)
    else:
        _emit_rows(SAMPLE_HEADER, rows, fmt)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    try:
        results = run_suite(args.suite, cfg.params)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    rows = [["PASS" if c.passed else "FAIL", c.name, c.detail] for c in results]
    _emit_rows(["status", "check", "detail"], rows, cfg.fmt or "text")
    return EXIT_OK if all(c.passed for c in results) else EXIT_VERIFY


def cmd_table(args, cfg: RunConfig) -> int:
    p = cfg.params
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    if args.kind == "qnumbers":
        header = ["n", "qa_number", "factorial", "gamma_n_plus_1"]
        rows = [
            [n, fmt(qa_number(n, p)), fmt(q_alpha_factorial(n, p)), fmt(gamma_qa(n + 1, p))]
            for n in range(args.n + 1)
        ]
    else:
        b = bnk_table(args.n, p)
        header = ["n"] + [f"b{k}" for k in range(args.n + 1)]
        rows = [[n] + [fmt(x) for x in row] + [""] * (args.n - n) for n, row in enumerate(b)]
    _emit_rows(header, rows, cfg.fmt or "text")
    return EXIT_OK


def fmt(x) -> str:
    return str(scalar_out(x))


# -- parser ---------------------------------------------------------------------------


def _add_globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def d(value):
        return argparse.SUPPRESS if suppress else value

    g = parser.add_argument_group("parameters")
    g.add_argument("--q", default=d(DEFAULT_Q), help="base q in (0, 1), e.g. 1/4")
    g.add_argument("--Q", default=d(None), help="q**alpha; required in exact mode when not computable")
    g.add_argument("--alpha", default=d(DEFAULT_ALPHA), help="order alpha > 0, e.g. 1/2")
    g.add_argument("--mode", choices=[EXACT, FLOAT], default=d(EXACT))
    g.add_argument("--order", type=int, default=d(DEFAULT_ORDER), help="series truncation order")
    g.add_argument("--tol", type=float, default=d(DEFAULT_TOL), help="series evaluation tolerance")
    g.add_argument("--J", type=int, default=d(DEFAULT_J), help="Jackson sum half-width")
    g.add_argument("--format", choices=["json", "csv", "text"], default=d(None))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnatural", description="q,alpha-calculus, Natural transform and IVP solver"
    )
    _add_globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gamma", parents=[common], help="Gamma_{q,alpha}(n)")
    s.add_argument("n", type=int)
    s.add_argument("--verify", action="store_true", help="cross-check against the Jackson integral")
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("beta", parents=[common], help="B_{q,alpha}(m, n)")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_beta)

    s = sub.add_parser("eval", parents=[common], help="evaluate a time expression or alpha-series")
    s.add_argument("input", help="JSON file or - for stdin")
    s.add_argument("--t", help="comma-separated points")
    s.add_argument("--sample", help="t0,t1,n evenly spaced points")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("transform", parents=[common], help="forward transform of a time expression")
    s.add_argument("input")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("invert", parents=[common], help="invert a rational transform")
    s.add_argument("input")
    s.set_defaults(func=cmd_invert)

    s = sub.add_parser("solve", parents=[common], help="solve a linear initial-value problem")
    s.add_argument("input")
    s.add_argument("--sample", help="t0,t1,n points to evaluate the solution at")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", parents=[common], help="run a self-check suite")
    s.add_argument("suite", nargs="?", default="all")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("table", parents=[common], help="tabulate q-numbers or b_{n,k}")
    s.add_argument("kind", choices=["qnumbers", "bnk"])
    s.add_argument("--n", type=int, default=6)
    s.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except UnsupportedError as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ConvergenceError as exc:
        print(f"did not converge: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (UsageError, SchemaError, ModeError, DomainError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
