"""JSON shapes for series, expressions, transforms and problems.

Exact scalars travel as ``"p/q"`` strings, floats as JSON numbers.  The
schemas live in ``docs/schemas``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .alphaseries import AlphaSeries, TimeAtom, TimeExpr, POWER, KINDS
from .errors import ModeError
from .odesolver import ODEProblem
from .polys import Poly, RationalFn
from .qcore import EXACT, FLOAT, QParams, parse_scalar
from .transform import TransformExpr


class SchemaError(ValueError):
    """Input JSON does not have the documented shape."""


def scalar_out(x):
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return str(Fraction(x))
    return float(x)


def scalar_in(v, p: QParams):
    if p.is_exact and isinstance(v, float):
        if v.is_integer():
            return Fraction(int(v))
        raise ModeError(f"float literal {v!r} in exact mode; write it as a 'p/q' string")
    try:
        return parse_scalar(v, p.mode)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad scalar {v!r}") from exc


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# -- params -------------------------------------------------------------------


def params_from_json(d: dict, mode: str | None = None) -> QParams:
    mode = d.get("mode", mode or EXACT)
    if mode == FLOAT:
        return QParams.floating(d["q"], d["alpha"])
    return QParams.exact(d["q"], d["alpha"], d.get("Q"))


# -- alpha series ---------------------------------------------------------------


def series_to_json(f: AlphaSeries) -> dict:
    return {"alpha_series": {"coeffs": [scalar_out(c) for c in f.coeffs], "order": f.order}}


def series_from_json(d: dict, p: QParams) -> AlphaSeries:
    body = d.get("alpha_series", d)
    try:
        coeffs = [scalar_in(c, p) for c in body["coeffs"]]
    except KeyError as exc:
        raise SchemaError("alpha_series needs 'coeffs'") from exc
    return AlphaSeries.from_coeffs(coeffs, p, body.get("order"))


# -- time expressions -------------------------------------------------------------


def atom_to_json(a: TimeAtom) -> dict:
    if a.kind == POWER:
        return {"kind": POWER, "n": int(a.value)}
    return {"kind": a.kind, "beta": scalar_out(a.value)}


def atom_from_json(d: dict, p: QParams) -> TimeAtom:
    kind = d.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown atom kind {kind!r}")
    if kind == POWER:
        n = d.get("n")
        if not isinstance(n, int) or n < 0:
            raise SchemaError(f"power atom needs nonnegative integer 'n', got {n!r}")
        return TimeAtom(POWER, n)
    if "beta" not in d:
        raise SchemaError(f"{kind} atom needs 'beta'")
    return TimeAtom(kind, scalar_in(d["beta"], p))


def time_expr_to_json(e: TimeExpr) -> dict:
    out = {"time_expr": [{"coef": scalar_out(c), "atom": atom_to_json(a)} for c, a in e.terms]}
    if e.warnings:
        out["warnings"] = list(e.warnings)
    return out


def time_expr_from_json(d, p: QParams) -> TimeExpr:
    items = d.get("time_expr") if isinstance(d, dict) else d
    if not isinstance(items, list):
        raise SchemaError("time_expr must be a list of {coef, atom} objects")
    pairs = []
    for item in items:
        if not isinstance(item, dict) or "coef" not in item or "atom" not in item:
            raise SchemaError(f"bad time_expr term {item!r}")
        pairs.append((scalar_in(item["coef"], p), atom_from_json(item["atom"], p)))
    return TimeExpr.of(pairs)


# -- transforms ---------------------------------------------------------------------


def transform_to_json(R: TransformExpr) -> dict:
    out = {
        "m": R.m,
        "num": [scalar_out(c) for c in R.phi.num.coeffs],
        "den": [scalar_out(c) for c in R.phi.den.coeffs],
    }
    tail = [scalar_out(g) for g in _trimmed(R.tail)]
    if tail:
        out["tail"] = tail
    return out


def _trimmed(tail) -> list:
    t = list(tail)
    while t and t[-1] == 0:
        t.pop()
    return t


def transform_from_json(d: dict, p: QParams) -> TransformExpr:
    try:
        num = [scalar_in(c, p) for c in d["num"]]
        den = [scalar_in(c, p) for c in d["den"]]
    except KeyError as exc:
        raise SchemaError("transform needs 'num' and 'den'") from exc
    tail = tuple(scalar_in(g, p) for g in d.get("tail", []))
    m = d.get("m", 1)
    if not isinstance(m, int):
        raise SchemaError(f"'m' must be an integer, got {m!r}")
    try:
        phi = RationalFn(Poly(tuple(num)), Poly(tuple(den)))
    except ZeroDivisionError as exc:
        raise SchemaError("transform denominator is zero") from exc
    return TransformExpr(m, phi, tail)


# -- problems ------------------------------------------------------------------------


def problem_from_json(d: dict, p: QParams) -> ODEProblem:
    try:
        coeffs = [scalar_in(c, p) for c in d["coeffs"]]
        init = [scalar_in(c, p) for c in d["init"]]
    except KeyError as exc:
        raise SchemaError("problem needs 'coeffs' and 'init'") from exc
    rhs = time_expr_from_json(d.get("rhs", []), p)
    return ODEProblem(tuple(coeffs), rhs, tuple(init))


def problem_to_json(prob: ODEProblem, p: QParams) -> dict:
    params = p.to_json()
    return {
        "coeffs": [scalar_out(c) for c in prob.coeffs],
        "rhs": time_expr_to_json(prob.rhs),
        "init": [scalar_out(c) for c in prob.init],
        "params": params,
    }


__all__ = [
    "SchemaError",
    "atom_from_json",
    "atom_to_json",
    "canonical_json",
    "params_from_json",
    "problem_from_json",
    "problem_to_json",
    "scalar_in",
    "scalar_out",
    "series_from_json",
    "series_to_json",
    "time_expr_from_json",
    "time_expr_to_json",
    "transform_from_json",
    "transform_to_json",
]
