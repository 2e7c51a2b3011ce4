"""Partial fractions over w and read-back into time-domain atoms.

Only denominators built from ``w^k``, distinct linear factors ``w - r`` and
distinct quadratics ``w^2 + d`` (d > 0) are accepted: those are exactly the
shapes with a known original.  Anything else is an error, never an
approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Union

import numpy as np

from .alphaseries import Cos, Exp, Power, Sin, TimeExpr
from .errors import DegreeError, MultiplicityError, UnsupportedError, UnsupportedFactorError
from .polys import Poly, RationalFn
from .qcore import QParams, q_alpha_factorial, rational_root
from .transform import TransformExpr

FLOAT_ROOT_TOL = 1e-7


@dataclass(frozen=True)
class PoleAtZero:
    """c / w^k"""

    k: int
    c: object


@dataclass(frozen=True)
class SimplePole:
    """c / (w - r)"""

    r: object
    c: object


@dataclass(frozen=True)
class Quadratic:
    """(b w + c) / (w^2 + d)"""

    d: object
    b: object
    c: object


PartialFractionTerm = Union[PoleAtZero, SimplePole, Quadratic]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _integer_coeffs(p: Poly) -> list[int]:
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * Fraction(c).denominator // math.gcd(lcm, Fraction(c).denominator)
    return [int(Fraction(c) * lcm) for c in p.coeffs]


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct nonzero rational roots, by the rational root theorem."""
    p = p.shift_down(p.low_order())
    if p.degree < 1:
        return []
    ints = _integer_coeffs(p)
    a0, an = ints[0], ints[-1]
    roots = []
    for num, den in product(_divisors(a0), _divisors(an)):
        for sign in (1, -1):
            r = Fraction(sign * num, den)
            if r not in roots and p(r) == 0:
                roots.append(r)
    return sorted(roots)


def _deflate(p: Poly, r) -> tuple[Poly, int]:
    """Divide out (w - r) as often as possible; returns quotient and multiplicity."""
    mult = 0
    lin = Poly((-r, 1))
    while True:
        quo, rem = p.divmod(lin)
        if not rem.is_zero():
            return p, mult
        p, mult = quo, mult + 1


def _factor_exact(den: Poly):
    k = den.low_order()
    rest = den.shift_down(k)
    linear = []
    for r in rational_roots(rest):
        rest, mult = _deflate(rest, r)
        if mult > 1:
            raise MultiplicityError(f"repeated pole at w = {r} (multiplicity {mult})")
        linear.append(r)
    quads = []
    if rest.degree > 0:
        if any(rest[j] != 0 for j in range(1, rest.degree + 1, 2)):
            raise UnsupportedFactorError(f"irreducible factor {rest!r} is not of the form w^2 + d")
        even = Poly(tuple(rest[2 * j] for j in range(rest.degree // 2 + 1)))  # polynomial in z = w^2
        for z in rational_roots(even):
            even, mult = _deflate(even, z)
            if z >= 0:
                raise UnsupportedFactorError(f"factor w^2 - {z} should have split into linear factors")
            if mult > 1:
                raise MultiplicityError(f"repeated quadratic factor w^2 + {-z}")
            quads.append(-z)
        if even.degree > 0:
            raise UnsupportedFactorError(f"irreducible factor in w^2: {even!r}")
    return k, linear, quads


def _factor_float(den: Poly):
    coeffs = [complex(c) for c in den.coeffs]
    scale = max(abs(c) for c in coeffs)
    roots = np.roots([c / scale for c in reversed(coeffs)])
    k, linear, quads = 0, [], []
    used = [False] * len(roots)
    for i, z in enumerate(roots):
        if used[i]:
            continue
        used[i] = True
        if abs(z) <= FLOAT_ROOT_TOL:
            k += 1
        elif abs(z.imag) <= FLOAT_ROOT_TOL * max(1.0, abs(z)):
            if any(abs(z.real - r) <= FLOAT_ROOT_TOL * max(1.0, abs(r)) for r in linear):
                raise MultiplicityError(f"repeated pole at w = {z.real:.12g}")
            linear.append(float(z.real))
        elif abs(z.real) <= FLOAT_ROOT_TOL * abs(z):
            d = float(z.imag) ** 2
            # find and consume the conjugate
            for j in range(i + 1, len(roots)):
                if not used[j] and abs(roots[j] - z.conjugate()) <= FLOAT_ROOT_TOL * abs(z):
                    used[j] = True
                    break
            else:
                raise UnsupportedFactorError("unpaired imaginary root")
            if any(abs(d - e) <= FLOAT_ROOT_TOL * d for e in quads):
                raise MultiplicityError(f"repeated quadratic factor w^2 + {d:.12g}")
            quads.append(d)
        else:
            raise UnsupportedFactorError(f"complex root {z} is not on the real or imaginary axis")
    return k, sorted(linear), sorted(quads)


def _mod_quadratic(p: Poly, d):
    """Reduce p modulo w^2 + d; returns (x, y) with p = x + y w."""
    x, y = 0, 0
    wk = (1, 0)  # w^k as (x, y)
    for c in p.coeffs:
        x += c * wk[0]
        y += c * wk[1]
        wk = (-d * wk[1], wk[0])
    return x, y


def partial_fractions(phi: RationalFn) -> list[PartialFractionTerm]:
    """Exact decomposition of a proper rational function."""
    if phi.is_zero():
        return []
    if not phi.is_proper:
        raise DegreeError(
            f"numerator degree {phi.num.degree} >= denominator degree {phi.den.degree}"
        )
    num, den = phi.num, phi.den
    exact = num.exact and den.exact
    k, linear, quads = _factor_exact(den) if exact else _factor_float(den)

    terms: list[PartialFractionTerm] = []
    # poles at zero: Taylor-expand num / M at 0 where den = w^k M
    if k:
        M = den.shift_down(k) if exact else _drop_zero_roots(den, k)
        e = []
        for n in range(k):
            acc = num[n]
            for j in range(1, n + 1):
                acc -= M[j] * e[n - j]
            e.append(acc / M[0])
        for n in range(k):
            if e[n] != 0:
                terms.append(PoleAtZero(k - n, e[n]))
    dprime = den.derivative()
    for r in linear:
        c = num(r) / dprime(r)
        terms.append(SimplePole(r, c))
    for d in quads:
        quad = Poly((d, 0, 1))
        M = den.divmod(quad)[0]
        nx, ny = _mod_quadratic(num, d)
        mx, my = _mod_quadratic(M, d)
        # (nx + ny w) / (mx + my w) mod w^2 + d
        norm = mx * mx + d * my * my
        ix, iy = mx / norm, -my / norm
        c = nx * ix - d * ny * iy
        b = nx * iy + ny * ix
        terms.append(Quadratic(d, b, c))
    return terms


def _drop_zero_roots(den: Poly, k: int) -> Poly:
    # float mode: the low coefficients are numerically ~0; divide them out
    return Poly(den.coeffs[k:])


def recombine(terms: list[PartialFractionTerm]) -> RationalFn:
    acc = RationalFn.zero()
    for t in terms:
        if isinstance(t, PoleAtZero):
            acc = acc + RationalFn(Poly((t.c,)), Poly.monomial(t.k))
        elif isinstance(t, SimplePole):
            acc = acc + RationalFn(Poly((t.c,)), Poly((-t.r, 1)))
        else:
            acc = acc + RationalFn(Poly((t.c, t.b)), Poly((t.d, 0, 1)))
    return acc


def exact_sqrt(d):
    if isinstance(d, float):
        return math.sqrt(d), False
    r = rational_root(Fraction(d), 2)
    if r is None:
        return math.sqrt(d), True
    return r, False


def invert(R: TransformExpr, p: QParams) -> TimeExpr:
    """Time-domain original of a homogeneity-1 rational transform."""
    if R.m != 1 and not R.is_zero():
        raise UnsupportedError(f"only homogeneity m = 1 is invertible, got m={R.m}")
    if any(g != 0 for g in R.tail):
        raise UnsupportedError("transforms with a formal series tail cannot be inverted")
    pairs, warnings = [], []
    for t in partial_fractions(R.phi):
        if isinstance(t, PoleAtZero):
            pairs.append((t.c / q_alpha_factorial(t.k - 1, p), Power(t.k - 1)))
        elif isinstance(t, SimplePole):
            pairs.append((t.c, Exp(t.r)))
        else:
            beta, inexact = exact_sqrt(t.d)
            if inexact:
                warnings.append(f"sqrt({t.d}) is irrational; cos/sin rate evaluated in float")
            pairs.append((t.b, Cos(beta)))
            pairs.append((t.c / beta, Sin(beta)))
    return TimeExpr.of(pairs, warnings)


__all__ = [
    "PartialFractionTerm",
    "PoleAtZero",
    "Quadratic",
    "SimplePole",
    "invert",
    "partial_fractions",
    "rational_roots",
    "recombine",
]
