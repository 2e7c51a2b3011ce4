"""Univariate polynomials and rational functions in the transform variable w.

Coefficients are Fractions (exact mode) or floats (float mode).  Polynomials
are stored low degree first and always trimmed, so the zero polynomial is
``Poly(())``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

# relative threshold below which a float remainder counts as zero in gcd
FLOAT_GCD_RTOL = 1e-9


def _trim(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _is_exact(coeffs) -> bool:
    return all(not isinstance(c, float) for c in coeffs)


@dataclass(frozen=True)
class Poly:
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=Fraction(1)) -> "Poly":
        return cls((0,) * k + (c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        out = cls((Fraction(1),))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def exact(self) -> bool:
        return _is_exact(self.coeffs)

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "Poly") -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self[k] + other[k] for k in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly((Fraction(1),))
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        if len(rem) - 1 < dd:
            return Poly(), self
        quo = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            c = rem[k + dd] / other.lead
            quo[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
            rem[k + dd] = 0
        return Poly(tuple(quo)), Poly(tuple(rem[:dd]))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def scale_arg(self, c) -> "Poly":
        """p(c w)."""
        out, ck = [], 1
        for a in self.coeffs:
            out.append(a * ck)
            ck = ck * c
        return Poly(tuple(out))

    def monic(self) -> "Poly":
        return self * (1 / self.lead) if not isinstance(self.lead, int) else self * Fraction(1, self.lead)

    def low_order(self) -> int:
        """Multiplicity of the root w = 0."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return 0

    def shift_down(self, k: int) -> "Poly":
        """Divide by w**k (caller guarantees divisibility)."""
        return Poly(self.coeffs[k:])

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" + ("" if k == 0 else "*w" if k == 1 else f"*w^{k}"))
        return "Poly(" + " + ".join(terms) + ")"


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly((x,))


def _float_tidy(p: Poly, scale: float) -> Poly:
    return Poly(tuple(0 if abs(c) <= FLOAT_GCD_RTOL * scale else c for c in p.coeffs))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; float polynomials use a relative remainder tolerance."""
    exact = a.exact and b.exact
    if exact:
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
    else:
        scale = max([abs(c) for c in a.coeffs + b.coeffs] or [1.0])
        while not b.is_zero():
            r = _float_tidy(a.divmod(b)[1], scale)
            a, b = b, r
    if a.is_zero():
        return Poly((Fraction(1),))
    return a.monic()


@dataclass(frozen=True)
class RationalFn:
    """num/den in canonical form: coprime, monic denominator."""

    num: Poly
    den: Poly

    def __post_init__(self):
        num, den = self.num, self.den
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly((Fraction(1) if den.exact else 1.0,))
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.divmod(g)[0], den.divmod(g)[0]
            lead = den.lead
            num, den = num * (1 / Fraction(lead) if isinstance(lead, int) else 1 / lead), den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_poly(cls, p: Poly) -> "RationalFn":
        return cls(p, Poly((Fraction(1),)))

    @classmethod
    def const(cls, c) -> "RationalFn":
        return cls(Poly((c,)), Poly((Fraction(1),)))

    @classmethod
    def zero(cls) -> "RationalFn":
        return cls(Poly(), Poly((Fraction(1),)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    @property
    def is_proper(self) -> bool:
        return self.num.degree < self.den.degree

    def __add__(self, other) -> "RationalFn":
        other = _as_rat(other)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den)

    def __sub__(self, other) -> "RationalFn":
        return self + (-_as_rat(other))

    def __rsub__(self, other) -> "RationalFn":
        return _as_rat(other) - self

    def __mul__(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return RationalFn(self.num * other.num, self.den * other.den)
        if isinstance(other, Poly):
            return RationalFn(self.num * other, self.den)
        return RationalFn(self.num * other, self.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            if other.is_zero():
                raise ZeroDivisionError("division by zero rational function")
            return RationalFn(self.num * other.den, self.den * other.num)
        if isinstance(other, Poly):
            return RationalFn(self.num, self.den * other)
        return RationalFn(self.num * (1 / other), self.den)

    def mul_w(self, k: int) -> "RationalFn":
        """Multiply by w**k, k of either sign."""
        if k >= 0:
            return RationalFn(self.num * Poly.monomial(k), self.den)
        return RationalFn(self.num, self.den * Poly.monomial(-k))

    def scale_arg(self, c) -> "RationalFn":
        """phi(c w)."""
        return RationalFn(self.num.scale_arg(c), self.den.scale_arg(c))

    def __call__(self, w):
        return self.num(w) / self.den(w)

    def laurent_at_infinity(self, count: int) -> tuple[Poly, list]:
        """Split into polynomial part and the first ``count`` coefficients g_n of
        ``sum_n g_n w^{-(n+1)}``."""
        poly, rem = self.num.divmod(self.den)
        dn = self.den.degree
        # rem/den with w = 1/z: z * rev(rem)/rev(den), rev padded to degree dn
        rnum = [rem[dn - 1 - k] for k in range(dn)]  # coefficient of z^{k+1}
        rden = [self.den[dn - k] for k in range(dn + 1)]  # rden[0] = 1
        out = []
        for n in range(count):
            acc = rnum[n] if n < len(rnum) else 0
            for j in range(1, min(n, dn) + 1):
                acc -= rden[j] * out[n - j]
            out.append(acc / rden[0])
        return poly, out

    def approx_equal(self, other: "RationalFn", rtol: float = 1e-9) -> bool:
        lhs = self.num * other.den
        rhs = other.num * self.den
        diff = lhs - rhs
        scale = max([abs(c) for c in lhs.coeffs + rhs.coeffs] or [1.0])
        return all(abs(c) <= rtol * scale for c in diff.coeffs)

    def __repr__(self) -> str:
        return f"RationalFn({self.num!r} / {self.den!r})"


def _as_rat(x) -> RationalFn:
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, Poly):
        return RationalFn.from_poly(x)
    return RationalFn.const(x)
