"""Self-checks behind ``qnatural verify``.

Each check returns a :class:`Check`; suites are lists of checks and their
results come back sorted by name so the output is stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .alphaseries import AlphaSeries, Cos, Exp, Power, Sin, TimeExpr, make_exp_series, inv_e_kernel, series_eval
from .odesolver import ODEProblem, residual, solve_ivp
from .oracle import beta_numeric, gamma_numeric, natural_numeric
from .qcalculus import dqa_series, taylor_qa
from .qcore import QParams, beta_qa, gamma_qa, qa_number
from .transform import (
    bnk_form,
    natural_series,
    natural_time_expr,
    tpower_transform_via_s,
    tpower_transform_via_u,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def _close(a, b, rtol: float = 1e-9) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    return abs(float(a) - float(b)) <= rtol * max(1.0, abs(float(b)))


def _same_expr(got: TimeExpr, want: TimeExpr, rtol: float = 1e-9) -> bool:
    if len(got.terms) != len(want.terms):
        return False
    for (cg, ag), (cw, aw) in zip(got.terms, want.terms):
        if ag.kind != aw.kind or not _close(ag.value, aw.value, rtol) or not _close(cg, cw, rtol):
            return False
    return True


def _same_transform(a, b, terms: int, rtol: float = 1e-7) -> bool:
    if a.m != b.m:
        return False
    pa, ga = a.laurent(terms)
    pb, gb = b.laurent(terms)
    width = max(len(pa.coeffs), len(pb.coeffs))
    xs = list(pa.coeffs) + [0] * (width - len(pa.coeffs)) + list(ga)
    ys = list(pb.coeffs) + [0] * (width - len(pb.coeffs)) + list(gb)
    return all(_close(x, y, rtol) for x, y in zip(xs, ys))


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


# -- gamma / beta -------------------------------------------------------------------


def check_gamma(p: QParams, n_exact: int = 10, n_numeric: int = 5) -> list[Check]:
    out = []
    prod = p.scalar(1)
    ok = True
    for n in range(1, n_exact + 1):
        prod *= qa_number(n, p)
        ok = ok and _close(gamma_qa(n + 1, p), prod)
    out.append(Check("gamma.factorial_identity", ok, f"Gamma(n+1) = [n alpha]! for n <= {n_exact}"))
    for n in range(1, n_numeric + 1):
        rep = gamma_numeric(n, p)
        err = _rel(rep.value, float(gamma_qa(n, p)))
        out.append(Check(f"gamma.oracle.n{n}", err < 1e-6, f"rel err {err:.2e}"))
    return out


def check_beta(p: QParams, n_max: int = 5) -> list[Check]:
    out = []
    for m in range(1, n_max + 1):
        for n in range(1, n_max + 1):
            rep = beta_numeric(m, n, p)
            err = abs(rep.value - float(beta_qa(m, n, p)))
            out.append(Check(f"beta.oracle.m{m}n{n}", err < 1e-8, f"abs err {err:.2e}"))
    return out


# -- transforms ---------------------------------------------------------------------


def check_tpower(p: QParams, n_max: int = 3, terms: int = 24) -> list[Check]:
    out = []
    fs = {
        "one": TimeExpr.atom(Power(0)),
        "t_alpha": TimeExpr.atom(Power(1)),
        "exp_half": TimeExpr.atom(Exp(p.scalar(Fraction(1, 2)))),
    }
    N = terms + n_max + 2
    for label, f in fs.items():
        R = natural_time_expr(f, p)
        for n in range(1, n_max + 1):
            via_s = tpower_transform_via_s(R, n, p)
            via_u = tpower_transform_via_u(R, n, p)
            via_b = bnk_form(R, n, p)
            series = f.to_series(N, p) * AlphaSeries.monomial(n, p, N)
            direct = natural_series(series.truncate(N))
            ok = all(_same_transform(via_s, x, terms) for x in (via_u, via_b, direct))
            out.append(Check(f"transforms.tpower.{label}.n{n}", ok, "s-route, u-route, b_nk form, series"))
    return out


def check_transform_numeric(p: QParams) -> list[Check]:
    out = []
    cases = [("one", TimeExpr.atom(Power(0))), ("t_alpha", TimeExpr.atom(Power(1)))]
    for label, f in cases:
        R = natural_time_expr(f, p)
        for u, s in ((1, 2), (1, 3), (2, 5)):
            rep = natural_numeric(lambda t, f=f: f.evaluate(t, p), u, s, p)
            err = _rel(rep.value, R.evaluate(u, s, p))
            out.append(Check(f"transforms.numeric.{label}.u{u}s{s}", err < 1e-5, f"rel err {err:.2e}"))
    return out


# -- examples ----------------------------------------------------------------------


def example1(p: QParams) -> tuple[ODEProblem, TimeExpr]:
    c = p.scalar
    prob = ODEProblem((c(1), c(1), c(-6), c(0)), TimeExpr.of([]), (c(1), c(0), c(5)))
    want = TimeExpr.of(
        [(c(Fraction(1, 6)), Power(0)), (c(Fraction(1, 3)), Exp(c(-3))), (c(Fraction(1, 2)), Exp(c(2)))]
    )
    return prob, want


def example2(p: QParams) -> tuple[ODEProblem, TimeExpr]:
    c = p.scalar
    prob = ODEProblem((c(1), c(3)), TimeExpr.atom(Sin(c(2)), c(13)), (c(6),))
    want = TimeExpr.of([(c(8), Exp(c(-3))), (c(-2), Cos(c(2))), (c(3), Sin(c(2)))])
    return prob, want


def check_examples(p: QParams) -> list[Check]:
    out = []
    for label, build in (("example1", example1), ("example2", example2)):
        prob, want = build(p)
        got = solve_ivp(prob, p)
        out.append(Check(f"examples.{label}.solution", _same_expr(got, want), repr(got)))
        res = residual(prob, got, p, 16)
        small = all(_close(c, 0 * c, 1e-8) for c in res.coeffs)
        out.append(Check(f"examples.{label}.residual", small, "series residual vanishes"))
    return out


# -- kernel and calculus ------------------------------------------------------------------


def check_kernel(p: QParams, points: int = 20) -> list[Check]:
    series = make_exp_series(p.scalar(1), 64, p)
    omq, a = float(p.one_minus_q), float(p.alpha)
    # (1-q) x^alpha up to 0.5
    worst = 0.0
    for i in range(points):
        x = (0.5 * (i + 1) / points / omq) ** (1 / a)
        worst = max(worst, abs(inv_e_kernel(x, p) * series_eval(series, x).value - 1))
    return [Check("kernel.reciprocal", worst < 1e-8, f"max |1/e * e - 1| = {worst:.2e}")]


def check_calculus(p: QParams) -> list[Check]:
    c = p.scalar
    f = AlphaSeries.from_coeffs([c(1), c(-2), c(3), c(Fraction(1, 2)), c(5)], p)
    g = AlphaSeries.from_coeffs([c(2), c(1), c(0), c(-1), c(Fraction(1, 3))], p)
    N = f.order + g.order
    F, G = f.truncate(N), g.truncate(N)
    lhs = dqa_series(F * G)
    rhs = F.shift_q() * dqa_series(G) + G * dqa_series(F)
    ok = all(_close(x, y) for x, y in zip(lhs.coeffs, rhs.truncate(lhs.order).coeffs))
    out = [Check("calculus.leibniz", ok, "D(fg) = f(qx) Dg + g Df")]
    ok = True
    for a in (c(0), c(1), c(-1), c(Fraction(1, 2))):
        back = taylor_qa(f, a).reconstruct(f.order)
        ok = ok and all(_close(x, y) for x, y in zip(back.coeffs, f.coeffs))
    out.append(Check("calculus.taylor_roundtrip", ok, "centers 0, 1, -1, 1/2"))
    return out


SUITES: dict[str, list[Callable[[QParams], list[Check]]]] = {
    "gamma": [check_gamma, check_beta],
    "transforms": [check_tpower, check_transform_numeric],
    "examples": [check_examples],
    "kernel": [check_kernel],
    "calculus": [check_calculus],
}


def run_suite(name: str, p: QParams) -> list[Check]:
    if name == "all":
        fns = [fn for suite in SUITES.values() for fn in suite]
    elif name in SUITES:
        fns = SUITES[name]
    else:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    results = [chk for fn in fns for chk in fn(p)]
    return sorted(results, key=lambda chk: chk.name)


__all__ = ["Check", "SUITES", "example1", "example2", "run_suite"]
