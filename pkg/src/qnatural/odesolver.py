"""Linear constant-coefficient q,alpha-differential initial-value problems.

The equation ``sum_j a_j (D^{q,alpha})^{k-j} f = b`` is transformed with the
derivative theorem, solved for N(f) by rational-function division and
inverted; no homogeneous/particular split is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphaseries import DEFAULT_ORDER, AlphaSeries, TimeExpr
from .errors import DomainError, MultiplicityError, UnsupportedError
from .inverse import invert, rational_roots
from .polys import Poly, RationalFn, poly_gcd
from .qcalculus import dqa_series
from .qcore import QParams, q_alpha_factorial
from .transform import TransformExpr, natural_time_expr


@dataclass(frozen=True)
class ODEProblem:
    coeffs: tuple
    rhs: TimeExpr
    init: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        object.__setattr__(self, "init", tuple(self.init))
        if len(self.coeffs) < 2:
            raise DomainError("need at least coefficients a_0, a_1 (order >= 1)")
        if self.coeffs[0] == 0:
            raise DomainError("leading coefficient a_0 must be nonzero")
        if len(self.init) != self.order:
            raise DomainError(f"order {self.order} problem needs {self.order} initial values")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def char_poly(prob: ODEProblem) -> Poly:
    """sum_j a_j w^{k-j}."""
    k = prob.order
    return Poly(tuple(prob.coeffs[k - i] for i in range(k + 1)))


def _init_poly(prob: ODEProblem) -> Poly:
    # sum_j a_j sum_{l < k-j} w^{k-j-1-l} y_l
    k = prob.order
    acc = Poly()
    for j, a in enumerate(prob.coeffs):
        i = k - j
        for l_ in range(i):
            acc = acc + Poly.monomial(i - 1 - l_, a * prob.init[l_])
    return acc


def transformed_solution(prob: ODEProblem, p: QParams) -> TransformExpr:
    rhs = natural_time_expr(prob.rhs, p)
    if any(g != 0 for g in rhs.tail):
        raise UnsupportedError("right-hand side has a series-tail transform (capital exponential)")
    phi = (rhs.phi + RationalFn.from_poly(_init_poly(prob))) / char_poly(prob)
    return TransformExpr(1, phi)


def solve_ivp(prob: ODEProblem, p: QParams) -> TimeExpr:
    R = transformed_solution(prob, p)
    try:
        return invert(R, p)
    except MultiplicityError as exc:
        shared = _resonant_roots(prob, p)
        if shared:
            raise MultiplicityError(
                f"resonance: right-hand side pole(s) {shared} coincide with characteristic roots"
            ) from exc
        raise


def _resonant_roots(prob: ODEProblem, p: QParams) -> list:
    rhs = natural_time_expr(prob.rhs, p)
    g = poly_gcd(char_poly(prob), rhs.phi.den)
    if g.degree < 1 or not g.exact:
        return []
    out = [0] if g.low_order() else []
    return out + list(rational_roots(g))


def residual(prob: ODEProblem, f: TimeExpr, p: QParams, N: int = DEFAULT_ORDER) -> AlphaSeries:
    """sum_j a_j D^{k-j} f - b as a series, truncated to order N - k."""
    k = prob.order
    fs = f.to_series(N, p)
    derivs = [fs]
    for _ in range(k):
        derivs.append(dqa_series(derivs[-1]))
    out = prob.rhs.to_series(N - k, p) * -1
    for j, a in enumerate(prob.coeffs):
        out = out + derivs[k - j].truncate(N - k) * a
    return out


def initial_values(f: TimeExpr, k: int, p: QParams) -> list:
    """(D^j f)(0) = c_j [j alpha]! for j < k."""
    s = f.to_series(k, p)
    return [s[j] * q_alpha_factorial(j, p) for j in range(k)]


__all__ = ["ODEProblem", "char_poly", "initial_values", "residual", "solve_ivp", "transformed_solution"]
