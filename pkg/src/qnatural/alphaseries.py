"""Truncated alpha-power series and the deformed special functions.

An :class:`AlphaSeries` holds ``c_0..c_N`` standing for ``sum c_n t^{alpha n}``.
Time-domain expressions (:class:`TimeExpr`) are linear combinations of the
atoms ``t^{alpha n}``, ``e(at)``, ``E(at)``, ``c(at)`` and ``s(at)``.  Rates
are stored as ``beta = a**alpha``, which is the only way any transform
formula sees ``a``; this keeps negative and imaginary rates out of the
picture entirely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .errors import ConvergenceError, ModeError
from .qcore import QParams, Scalar, q_alpha_factorial

DEFAULT_ORDER = 32
DEFAULT_TOL = 1e-12
KERNEL_EPS = 1e-14
# factors of the product kernel closer than this to zero are treated as exact zeros
KERNEL_ZERO_RTOL = 1e-10


def _zero(p: QParams):
    return Fraction(0) if p.is_exact else 0.0


def _one(p: QParams):
    return Fraction(1) if p.is_exact else 1.0


@dataclass(frozen=True)
class AlphaSeries:
    """Truncated series ``sum_{n<=order} c_n t^{alpha n}``."""

    coeffs: tuple
    params: QParams

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, p: QParams, order: int | None = None) -> "AlphaSeries":
        cs = [p.scalar(c) for c in coeffs] or [_zero(p)]
        if order is not None:
            if order + 1 < len(cs):
                cs = cs[: order + 1]
            cs += [_zero(p)] * (order + 1 - len(cs))
        return cls(tuple(cs), p)

    @classmethod
    def zero(cls, p: QParams, order: int = DEFAULT_ORDER) -> "AlphaSeries":
        return cls((_zero(p),) * (order + 1), p)

    @classmethod
    def monomial(cls, n: int, p: QParams, order: int = DEFAULT_ORDER, c=1) -> "AlphaSeries":
        cs = [_zero(p)] * (order + 1)
        if n <= order:
            cs[n] = Fraction(c) if p.is_exact and isinstance(c, int) else c
        return cls(tuple(cs), p)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def _check(self, other: "AlphaSeries"):
        if self.params != other.params:
            raise ModeError("series built with different parameters")

    def __add__(self, other: "AlphaSeries") -> "AlphaSeries":
        return series_add(self, other)

    def __sub__(self, other: "AlphaSeries") -> "AlphaSeries":
        return series_add(self, series_scale(other, -1))

    def __neg__(self) -> "AlphaSeries":
        return series_scale(self, -1)

    def __mul__(self, other) -> "AlphaSeries":
        if isinstance(other, AlphaSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "AlphaSeries":
        return AlphaSeries(self.coeffs[: order + 1], self.params)

    def shift_q(self) -> "AlphaSeries":
        """f(q t): c_n -> Q**n c_n."""
        Q = self.params.Q
        return AlphaSeries(tuple(c * Q**n for n, c in enumerate(self.coeffs)), self.params)

    def at_power(self, X):
        """Substitute ``t^alpha = X`` (exact for rational X)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * X + c
        return acc

    def __call__(self, t: float) -> float:
        return series_eval(self, t).value

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlphaSeries):
            return NotImplemented
        n = max(self.order, other.order)
        pad = lambda s: s.coeffs + (0,) * (n - s.order)  # noqa: E731
        return self.params == other.params and pad(self) == pad(other)

    def __hash__(self):
        return hash(self.coeffs)


def series_add(f: AlphaSeries, g: AlphaSeries) -> AlphaSeries:
    f._check(g)
    n = min(f.order, g.order)
    return AlphaSeries(tuple(f[k] + g[k] for k in range(n + 1)), f.params)


def series_scale(f: AlphaSeries, c) -> AlphaSeries:
    return AlphaSeries(tuple(c * x for x in f.coeffs), f.params)


def series_mul(f: AlphaSeries, g: AlphaSeries) -> AlphaSeries:
    """Cauchy product capped at the smaller order."""
    f._check(g)
    n = min(f.order, g.order)
    out = [_zero(f.params)] * (n + 1)
    for i in range(n + 1):
        a = f[i]
        if a == 0:
            continue
        for j in range(n + 1 - i):
            out[i + j] += a * g[j]
    return AlphaSeries(tuple(out), f.params)


def make_exp_series(beta, N: int, p: QParams) -> AlphaSeries:
    """e_{q,alpha}(a t) with a**alpha = beta: c_n = beta**n / [n alpha]!."""
    return AlphaSeries(tuple(beta**n / q_alpha_factorial(n, p) for n in range(N + 1)), p)


def make_cap_exp_series(beta, N: int, p: QParams) -> AlphaSeries:
    """E_{q,alpha}(a t): c_n = Q**(n(n-1)/2) beta**n / [n alpha]!."""
    Q = p.Q
    return AlphaSeries(
        tuple(Q ** (n * (n - 1) // 2) * beta**n / q_alpha_factorial(n, p) for n in range(N + 1)),
        p,
    )


def make_cos_series(beta, N: int, p: QParams) -> AlphaSeries:
    cs = []
    for n in range(N + 1):
        if n % 2:
            cs.append(_zero(p))
        else:
            cs.append((-1) ** (n // 2) * beta**n / q_alpha_factorial(n, p))
    return AlphaSeries(tuple(cs), p)


def make_sin_series(beta, N: int, p: QParams) -> AlphaSeries:
    cs = []
    for n in range(N + 1):
        if n % 2 == 0:
            cs.append(_zero(p))
        else:
            cs.append((-1) ** (n // 2) * beta**n / q_alpha_factorial(n, p))
    return AlphaSeries(tuple(cs), p)


@dataclass(frozen=True)
class SeriesValue:
    value: float
    tail: float
    converged: bool


def series_eval(f: AlphaSeries, t: float, tol: float = DEFAULT_TOL) -> SeriesValue:
    """Numeric value at t >= 0 with a tail estimate from the last nonzero terms.

    ``converged`` is False when the ratio of the last two nonzero terms is at
    least 1 or the last term exceeds ``tol`` relative to the partial sum.
    """
    if t < 0:
        raise ValueError(f"series_eval needs t >= 0, got {t}")
    X = float(t) ** float(f.params.alpha)
    terms = [float(c) * X**n for n, c in enumerate(f.coeffs)]
    total = math.fsum(terms)
    nz = [abs(x) for x in terms if x != 0]
    if len(nz) < 2:
        return SeriesValue(total, 0.0, True)
    last, prev = nz[-1], nz[-2]
    ratio = last / prev
    tail = last * ratio / (1 - ratio) if ratio < 1 else math.inf
    converged = ratio < 1 and last <= tol * max(abs(total), 1e-300)
    return SeriesValue(total, tail, converged)


def _kernel_product(y: complex | float, Q: float, J: int | None, sign: int) -> complex | float:
    """prod_{j>=0} (1 + sign * y * Q**j), cut once |y Q**j| < KERNEL_EPS."""
    if y == 0:
        return 1.0
    if J is None:
        J = max(0, math.ceil(math.log(KERNEL_EPS / abs(y)) / math.log(Q))) + 1
    elif abs(y) * Q**J >= KERNEL_EPS:
        raise ConvergenceError(
            f"kernel product needs more than J={J} factors at |y|={abs(y):.3g}"
        )
    factors = []
    for j in range(J + 1):
        term = sign * y * Q**j
        if abs(1 + term) <= KERNEL_ZERO_RTOL:
            return 0.0
        factors.append(1 + term)
    out = 1.0
    for fct in factors:
        out *= fct
    return out


def inv_e_kernel(x: float, p: QParams, J: int | None = None, beta=1) -> float:
    """1 / e_{q,alpha}(a x) with a**alpha = beta, by the infinite product
    prod_j (1 - (1-q) beta Q**j x**alpha).  Valid for every x >= 0."""
    if x < 0:
        raise ValueError(f"inv_e_kernel needs x >= 0, got {x}")
    y = float(p.one_minus_q) * float(beta) * float(x) ** float(p.alpha)
    return _kernel_product(y, float(p.Q), J, -1)


def cap_e_product(x: float, p: QParams, beta=1, J: int | None = None) -> float:
    """E_{q,alpha}(a x) = prod_j (1 + (1-q) beta Q**j x**alpha)."""
    y = float(p.one_minus_q) * float(beta) * float(x) ** float(p.alpha)
    return _kernel_product(y, float(p.Q), J, +1)


def _exp_complex(x: float, p: QParams, beta: complex) -> complex:
    y = float(p.one_minus_q) * beta * float(x) ** float(p.alpha)
    k = _kernel_product(y, float(p.Q), None, -1)
    if k == 0:
        raise ZeroDivisionError("e_{q,alpha} has a pole at this point")
    return 1 / k


# --------------------------------------------------------------------------
# time-domain atoms and expressions

POWER, EXP, CAPEXP, COS, SIN = "power", "exp", "capexp", "cos", "sin"
KINDS = (POWER, EXP, CAPEXP, COS, SIN)
_KIND_ORDER = {k: i for i, k in enumerate(KINDS)}


@dataclass(frozen=True)
class TimeAtom:
    """One of t^{alpha n} (kind 'power', ``value`` = n) or a deformed
    exponential/trigonometric function with ``value`` = beta."""

    kind: str
    value: object

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.kind == POWER and (int(self.value) != self.value or self.value < 0):
            raise ValueError(f"power atom needs a nonnegative integer, got {self.value}")

    def sort_key(self):
        return (_KIND_ORDER[self.kind], float(self.value))

    def series(self, N: int, p: QParams) -> AlphaSeries:
        if self.kind == POWER:
            return AlphaSeries.monomial(int(self.value), p, N)
        beta = self.value
        return {
            EXP: make_exp_series,
            CAPEXP: make_cap_exp_series,
            COS: make_cos_series,
            SIN: make_sin_series,
        }[self.kind](beta, N, p)

    def evaluate(self, t: float, p: QParams) -> float:
        """Atom-wise numeric value, via product forms for the exponentials."""
        if self.kind == POWER:
            return float(t) ** (float(p.alpha) * int(self.value))
        beta = float(self.value)
        if self.kind == EXP:
            k = inv_e_kernel(t, p, beta=beta)
            if k == 0:
                raise ZeroDivisionError("e_{q,alpha} has a pole at this point")
            return 1.0 / k
        if self.kind == CAPEXP:
            return cap_e_product(t, p, beta=beta)
        z = _exp_complex(t, p, 1j * beta)
        return z.real if self.kind == COS else z.imag

    def __repr__(self) -> str:
        names = {POWER: "Power", EXP: "Exp", CAPEXP: "CapExp", COS: "Cos", SIN: "Sin"}
        return f"{names[self.kind]}({self.value})"


def Power(n: int) -> TimeAtom:
    return TimeAtom(POWER, int(n))


def Exp(beta) -> TimeAtom:
    return TimeAtom(EXP, beta)


def CapExp(beta) -> TimeAtom:
    return TimeAtom(CAPEXP, beta)


def Cos(beta) -> TimeAtom:
    return TimeAtom(COS, beta)


def Sin(beta) -> TimeAtom:
    return TimeAtom(SIN, beta)


def _normalise(coef, atom: TimeAtom):
    """Fold degenerate rates into canonical atoms."""
    if atom.kind == POWER:
        return coef, atom
    beta = atom.value
    if beta == 0:
        if atom.kind == SIN:
            return 0, atom
        return coef, Power(0)
    if atom.kind == COS and beta < 0:
        return coef, Cos(-beta)
    if atom.kind == SIN and beta < 0:
        return -coef, Sin(-beta)
    return coef, atom


@dataclass(frozen=True)
class TimeExpr:
    """Linear combination of time atoms, deduplicated and sorted."""

    terms: tuple = ()
    warnings: tuple = field(default=(), compare=False)

    @classmethod
    def of(cls, pairs: Iterable[tuple], warnings: Iterable[str] = ()) -> "TimeExpr":
        acc: dict[TimeAtom, object] = {}
        for coef, atom in pairs:
            coef, atom = _normalise(coef, atom)
            if coef == 0:
                continue
            acc[atom] = acc.get(atom, 0) + coef
        terms = tuple(
            sorted(((c, a) for a, c in acc.items() if c != 0), key=lambda ca: ca[1].sort_key())
        )
        return cls(terms, tuple(warnings))

    @classmethod
    def atom(cls, atom: TimeAtom, coef=Fraction(1)) -> "TimeExpr":
        return cls.of([(coef, atom)])

    def __add__(self, other: "TimeExpr") -> "TimeExpr":
        return TimeExpr.of(self.terms + other.terms, self.warnings + other.warnings)

    def __neg__(self) -> "TimeExpr":
        return self * -1

    def __sub__(self, other: "TimeExpr") -> "TimeExpr":
        return self + (-other)

    def __mul__(self, c) -> "TimeExpr":
        return TimeExpr.of(((c * k, a) for k, a in self.terms), self.warnings)

    __rmul__ = __mul__

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, atom: TimeAtom):
        for c, a in self.terms:
            if a == atom:
                return c
        return 0

    def to_series(self, N: int, p: QParams) -> AlphaSeries:
        out = AlphaSeries.zero(p, N)
        for c, a in self.terms:
            out = out + a.series(N, p) * c
        return out

    def evaluate(self, t: float, p: QParams) -> float:
        return math.fsum(float(c) * a.evaluate(t, p) for c, a in self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "TimeExpr(0)"
        return "TimeExpr(" + " + ".join(f"{c}*{a!r}" for c, a in self.terms) + ")"


Evaluator = Callable[[float], float]

__all__ = [
    "AlphaSeries",
    "CapExp",
    "Cos",
    "Exp",
    "Power",
    "SeriesValue",
    "Sin",
    "TimeAtom",
    "TimeExpr",
    "cap_e_product",
    "inv_e_kernel",
    "make_cap_exp_series",
    "make_cos_series",
    "make_exp_series",
    "make_sin_series",
    "series_add",
    "series_eval",
    "series_mul",
    "series_scale",
]
