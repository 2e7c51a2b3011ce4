"""Exact q-arithmetic primitives.

Everything is parametrised by :class:`QParams`, which carries the deformation
base ``q``, the fractional order ``alpha`` and ``Q = q**alpha``.  In exact
mode all three are :class:`fractions.Fraction` values and every formula below
only ever touches ``q``, ``1 - q`` and integer powers of ``Q``, so results are
exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

from .errors import DomainError, ModeError

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"


def parse_scalar(value, mode: str = EXACT) -> Scalar:
    """Turn an int, Fraction, float or ``"p/q"`` string into a mode scalar."""
    if mode == EXACT:
        if isinstance(value, bool):
            raise ModeError(f"not a scalar: {value!r}")
        if isinstance(value, float):
            raise ModeError(f"float {value!r} not allowed in exact mode")
        if isinstance(value, (int, Rational)):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except ValueError as exc:
                raise ModeError(f"not a rational literal: {value!r}") from exc
        raise ModeError(f"not a scalar: {value!r}")
    if mode == FLOAT:
        if isinstance(value, str):
            value = Fraction(value.strip()) if "/" in value else float(value)
        return float(value)
    raise ValueError(f"unknown mode {mode!r}")


def rational_root(x: Fraction, k: int) -> Fraction | None:
    """Exact k-th root of a nonnegative rational, or None if it is irrational."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = _int_root(num, k), _int_root(den, k)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _int_root(n: int, k: int) -> int | None:
    if n in (0, 1):
        return n
    if n.bit_length() < 1000:
        r = round(n ** (1.0 / k))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**k == n:
                return cand
    # large integers: Newton iteration
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    return r if r**k == n else None


def rational_power(x: Fraction, e: Fraction) -> Fraction | None:
    """Exact value of ``x**e`` for rational x >= 0 and rational e, if rational."""
    e = Fraction(e)
    root = rational_root(Fraction(x), e.denominator)
    if root is None:
        return None
    if root == 0:
        return Fraction(0) if e > 0 else None
    return root**e.numerator


@dataclass(frozen=True)
class QParams:
    """Deformation parameters.

    Use :meth:`exact` or :meth:`floating` rather than the raw constructor.
    """

    q: Scalar
    alpha: Scalar
    Q: Scalar
    mode: str = EXACT
    one_minus_q: Scalar = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0 < self.q < 1:
            raise DomainError(f"need 0 < q < 1, got q={self.q}")
        if not self.alpha > 0:
            raise DomainError(f"need alpha > 0, got alpha={self.alpha}")
        if self.mode == EXACT:
            for name in ("q", "alpha", "Q"):
                if not isinstance(getattr(self, name), Fraction):
                    raise ModeError(f"{name} must be a Fraction in exact mode")
            if abs(float(self.Q) - float(self.q) ** float(self.alpha)) > 1e-12:
                raise DomainError(
                    f"Q={self.Q} is not q**alpha={float(self.q) ** float(self.alpha):.15g}"
                )
        object.__setattr__(self, "one_minus_q", 1 - self.q)

    @classmethod
    def exact(cls, q, alpha, Q=None) -> "QParams":
        q = parse_scalar(q)
        alpha = parse_scalar(alpha)
        if Q is None:
            Q = rational_power(q, alpha)
            if Q is None:
                raise ModeError(
                    f"q**alpha is irrational for q={q}, alpha={alpha}; pass Q or use float mode"
                )
        return cls(q, alpha, parse_scalar(Q), EXACT)

    @classmethod
    def floating(cls, q, alpha) -> "QParams":
        q = parse_scalar(q, FLOAT)
        alpha = parse_scalar(alpha, FLOAT)
        return cls(q, alpha, q**alpha, FLOAT)

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT

    def scalar(self, value) -> Scalar:
        """Coerce a user value into this mode; floats are rejected in exact mode."""
        return parse_scalar(value, self.mode)

    def Qpow(self, k: int) -> Scalar:
        """Integer power of Q (negative allowed)."""
        return self.Q**k

    def to_json(self) -> dict:
        def fmt(x):
            return str(x) if isinstance(x, Fraction) else x

        return {"q": fmt(self.q), "Q": fmt(self.Q), "alpha": fmt(self.alpha), "mode": self.mode}


def q_number(x, p: QParams) -> Scalar:
    """The q-number ``[x] = (1 - q**x)/(1 - q)``.

    ``x`` is an exponent value; integer multiples of alpha go through ``Q`` and
    integers through ``q``.  Anything else needs float mode.
    """
    if p.is_exact:
        x = parse_scalar(x)
        k = x / p.alpha
        if k.denominator == 1:
            return (1 - p.Q ** int(k)) / p.one_minus_q
        if x.denominator == 1:
            return (1 - p.q ** int(x)) / p.one_minus_q
        raise ModeError(f"q**{x} is not expressible exactly with alpha={p.alpha}")
    return (1 - p.q ** float(x)) / p.one_minus_q


def qa_number(k: int, p: QParams) -> Scalar:
    """``[k alpha] = (1 - Q**k)/(1 - q)``."""
    return (1 - p.Q**k) / p.one_minus_q


def q_alpha_factorial(n: int, p: QParams) -> Scalar:
    """``[n alpha]! = [alpha][2 alpha]...[n alpha]``, with ``[0]! = 1``."""
    if n < 0:
        raise DomainError(f"factorial of negative n={n}")
    return _factorials(p, n)[n]


@lru_cache(maxsize=64)
def _factorials(p: QParams, n: int) -> tuple:
    out = [Fraction(1) if p.is_exact else 1.0]
    for k in range(1, n + 1):
        out.append(out[-1] * qa_number(k, p))
    return tuple(out)


def shifted_power(a, b, n: int, p: QParams) -> Scalar:
    """``(a + b)^n_{q^alpha} = prod_{j<n} (a + Q**j b)``; 1 for n = 0."""
    if n < 0:
        raise DomainError(f"negative exponent n={n}")
    out = Fraction(1) if p.is_exact else 1.0
    for j in range(n):
        out *= a + p.Q**j * b
    return out


def gamma_qa(n: int, p: QParams) -> Scalar:
    """Deformed Gamma at a positive integer: ``Gamma(n) = [(n-1) alpha]!``."""
    if int(n) != n or n < 1:
        raise DomainError(f"gamma_qa needs a positive integer, got {n}")
    return q_alpha_factorial(int(n) - 1, p)


def beta_qa(m: int, n: int, p: QParams) -> Scalar:
    """Deformed Beta via the Gamma quotient."""
    for v in (m, n):
        if int(v) != v or v < 1:
            raise DomainError(f"beta_qa needs positive integers, got ({m}, {n})")
    return gamma_qa(m, p) * gamma_qa(n, p) / gamma_qa(m + n, p)


def bnk_table(n_max: int, p: QParams) -> list[list[Scalar]]:
    """Coefficients ``b[n][k]`` (0 <= k <= n <= n_max) of the u-derivative
    expansion of the transform of ``t^{alpha n} f``.

    The diagonal follows ``b[n][n] = Q**(2n-1) b[n-1][n-1]``.
    """
    if n_max < 0:
        raise DomainError(f"n_max must be nonnegative, got {n_max}")
    one = Fraction(1) if p.is_exact else 1.0
    rows = [[one]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [qa_number(n, p) * prev[0]]
        for k in range(1, n):
            row.append(qa_number(n + k, p) * prev[k] + p.Q ** (n - 1 + k) * prev[k - 1])
        row.append(p.Q ** (2 * n - 1) * prev[n - 1])
        rows.append(row)
    return rows


def is_zero(x: Scalar, scale: float = 1.0, rtol: float = 1e-12) -> bool:
    if isinstance(x, Fraction) or isinstance(x, int):
        return x == 0
    return abs(x) <= rtol * max(scale, 1e-300) or x == 0


def fmt_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


__all__ = [
    "EXACT",
    "FLOAT",
    "QParams",
    "Scalar",
    "beta_qa",
    "bnk_table",
    "gamma_qa",
    "parse_scalar",
    "q_alpha_factorial",
    "q_number",
    "qa_number",
    "rational_power",
    "rational_root",
    "shifted_power",
]
