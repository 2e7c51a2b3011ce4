"""The conformable q-derivative and q-integral, the shifted-power basis and
the generalised Taylor expansion."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .alphaseries import AlphaSeries
from .errors import DomainError, ModeError
from .qcore import QParams, Scalar, q_alpha_factorial, qa_number, rational_power

MAX_POINTWISE_DEPTH = 16


def dqa_series(f: AlphaSeries) -> AlphaSeries:
    """Term-wise derivative: the coefficient at n-1 becomes [n alpha] c_n."""
    p = f.params
    if f.order == 0:
        return AlphaSeries.zero(p, 0)
    return AlphaSeries(tuple(qa_number(n, p) * f[n] for n in range(1, f.order + 1)), p)


def iqa_series(f: AlphaSeries) -> AlphaSeries:
    """Term-wise integral with zero constant: c_n moves to n+1, divided by [(n+1) alpha]."""
    p = f.params
    zero = Fraction(0) if p.is_exact else 0.0
    return AlphaSeries((zero,) + tuple(c / qa_number(n + 1, p) for n, c in enumerate(f.coeffs)), p)


def dqa_iter(f: AlphaSeries, n: int) -> AlphaSeries:
    for _ in range(n):
        f = dqa_series(f)
    return f


def x_alpha(x, p: QParams):
    """x**alpha, exact in exact mode when x is a rational perfect power."""
    if p.is_exact and not isinstance(x, float):
        r = rational_power(Fraction(x), p.alpha)
        if r is None:
            raise ModeError(f"{x}**{p.alpha} is irrational; use float mode or a perfect power")
        return r
    return float(x) ** float(p.alpha)


def dqa_pointwise(f: Callable, x, p: QParams):
    """Finite q-difference [alpha](f(x) - f(qx)) / (x**alpha (1 - Q))."""
    if x == 0:
        raise DomainError("the q,alpha-derivative is undefined at x = 0")
    if x < 0:
        raise DomainError(f"need x > 0, got {x}")
    X = x_alpha(x, p)
    return qa_number(1, p) * (f(x) - f(p.q * x)) / (X * (1 - p.Q))


def dqa_pointwise_iter(f: Callable, x, n: int, p: QParams):
    """(D^{q,alpha})^n f at x, using f only on the grid x, qx, ..., q^n x."""
    if n > MAX_POINTWISE_DEPTH:
        raise DomainError(f"pointwise derivative depth {n} exceeds {MAX_POINTWISE_DEPTH}")
    if n == 0:
        return f(x)
    cache: dict = {}

    def level(k: int, y):
        key = (k, y)
        if key not in cache:
            if k == 0:
                cache[key] = f(y)
            else:
                cache[key] = dqa_pointwise(lambda z: level(k - 1, z), y, p)
        return cache[key]

    return level(n, x)


def shifted_power_series(A: tuple, B: tuple, n: int, p: QParams, order: int | None = None) -> AlphaSeries:
    """Expansion of ``(A + B)^n_{q^alpha} = prod_{j<n} (A + Q**j B)`` where
    A and B are linear in X = x**alpha, given as (constant, X-coefficient)."""
    order = n if order is None else order
    one = Fraction(1) if p.is_exact else 1.0
    out = AlphaSeries.from_coeffs([one], p, order)
    for j in range(n):
        Qj = p.Q**j
        factor = AlphaSeries.from_coeffs([A[0] + Qj * B[0], A[1] + Qj * B[1]], p, order)
        out = out * factor
    return out


def shifted_basis_expand(a, n: int, p: QParams, order: int | None = None) -> AlphaSeries:
    """(x**alpha - a)^n_{q^alpha} as a polynomial in x**alpha."""
    return shifted_power_series((0, 1), (-a, 0), n, p, order)


@dataclass(frozen=True)
class ShiftedBasisExpansion:
    """f = sum_n terms[n] (x**alpha - center)^n_{q^alpha} / [n alpha]!."""

    center: Scalar
    terms: tuple
    params: QParams

    def reconstruct(self, order: int | None = None) -> AlphaSeries:
        p = self.params
        order = len(self.terms) - 1 if order is None else order
        out = AlphaSeries.zero(p, order)
        for n, d in enumerate(self.terms):
            if d == 0:
                continue
            basis = shifted_basis_expand(self.center, n, p, order)
            out = out + basis * (d / q_alpha_factorial(n, p))
        return out

    def to_json(self) -> dict:
        from .serialize import scalar_out

        return {"center": scalar_out(self.center), "terms": [scalar_out(d) for d in self.terms]}


def taylor_qa(f: AlphaSeries, a, p: QParams | None = None) -> ShiftedBasisExpansion:
    """Coefficients (D^n f) evaluated where x**alpha = a, for n = 0..order."""
    p = f.params if p is None else p
    terms = []
    g = f
    for _ in range(f.order + 1):
        terms.append(g.at_power(a))
        g = dqa_series(g) if g.order > 0 else AlphaSeries.zero(p, 0)
    return ShiftedBasisExpansion(a, tuple(terms), p)


__all__ = [
    "ShiftedBasisExpansion",
    "dqa_iter",
    "dqa_pointwise",
    "dqa_pointwise_iter",
    "dqa_series",
    "iqa_series",
    "shifted_basis_expand",
    "shifted_power_series",
    "taylor_qa",
]
