"""Forward q,alpha-Natural transform in the variable w = s**alpha / u**alpha.

Every transform value is stored as ``Y^{-m} (phi(w) + sum_n g_n w^{-(n+1)})``
with ``Y = u**alpha``: a canonical rational part ``phi`` plus an optional
truncated formal tail (only the capital exponential produces one).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .alphaseries import CAPEXP, COS, EXP, POWER, SIN, AlphaSeries, TimeAtom, TimeExpr
from .errors import UnsupportedError
from .polys import Poly, RationalFn
from .qcore import QParams, bnk_table, q_alpha_factorial

DEFAULT_TAIL = 32


def _trim_tail(tail) -> tuple:
    t = list(tail)
    while t and t[-1] == 0:
        t.pop()
    return tuple(t)


@dataclass(frozen=True)
class TransformExpr:
    m: int
    phi: RationalFn
    tail: tuple = ()

    @classmethod
    def zero(cls, m: int = 1) -> "TransformExpr":
        return cls(m, RationalFn.zero())

    @classmethod
    def rational(cls, num, den, m: int = 1) -> "TransformExpr":
        return cls(m, RationalFn(Poly(tuple(num)), Poly(tuple(den))))

    def is_zero(self) -> bool:
        return self.phi.is_zero() and all(g == 0 for g in self.tail)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TransformExpr):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (
            self.m == other.m
            and self.phi == other.phi
            and _trim_tail(self.tail) == _trim_tail(other.tail)
        )

    def __hash__(self):
        return hash((self.m, self.phi, _trim_tail(self.tail)))

    def agrees(self, other: "TransformExpr", terms: int) -> bool:
        """Equal on the first ``terms`` coefficients of the expansion at w = infinity."""
        if self.m != other.m and not (self.is_zero() or other.is_zero()):
            return False
        pa, ga = self.laurent(terms)
        pb, gb = other.laurent(terms)
        return pa == pb and ga == gb

    def laurent(self, terms: int) -> tuple[Poly, list]:
        poly, g = self.phi.laurent_at_infinity(terms)
        for n, c in enumerate(self.tail[:terms]):
            g[n] += c
        return poly, g

    def _align(self, other: "TransformExpr") -> int:
        if self.is_zero():
            return other.m
        if other.is_zero() or self.m == other.m:
            return self.m
        raise UnsupportedError(f"cannot add transforms of homogeneity {self.m} and {other.m}")

    def __add__(self, other: "TransformExpr") -> "TransformExpr":
        m = self._align(other)
        n = max(len(self.tail), len(other.tail))
        if self.tail and other.tail:
            n = min(len(self.tail), len(other.tail))
        a = self.tail + (0,) * (n - len(self.tail)) if self.tail else (0,) * n
        b = other.tail + (0,) * (n - len(other.tail)) if other.tail else (0,) * n
        tail = tuple(x + y for x, y in zip(a[:n], b[:n]))
        return TransformExpr(m, self.phi + other.phi, tail)

    def __neg__(self) -> "TransformExpr":
        return self.scale(-1)

    def __sub__(self, other: "TransformExpr") -> "TransformExpr":
        return self + (-other)

    def scale(self, c) -> "TransformExpr":
        return TransformExpr(self.m, self.phi * c, tuple(c * g for g in self.tail))

    def __mul__(self, c) -> "TransformExpr":
        return self.scale(c)

    __rmul__ = __mul__

    def mul_w(self, k: int) -> "TransformExpr":
        """Multiply by w**k; positive k moves leading tail terms into phi."""
        phi = self.phi.mul_w(k)
        tail = self.tail
        if k > 0 and tail:
            spill = Poly(tuple(tail[j] if j < len(tail) else 0 for j in range(k))[::-1])
            # tail[j] w^{k-1-j} for j < k
            phi = phi + RationalFn.from_poly(spill)
            tail = tail[k:]
        elif k < 0 and tail:
            tail = (0,) * (-k) + tail
        return TransformExpr(self.m, phi, tail)

    def times_y(self, k: int) -> "TransformExpr":
        """Multiply by u**(alpha k)."""
        return TransformExpr(self.m - k, self.phi, self.tail)

    def subs_w(self, c) -> "TransformExpr":
        """w -> c w."""
        tail = tuple(g * c ** (-(n + 1)) for n, g in enumerate(self.tail))
        return TransformExpr(self.m, self.phi.scale_arg(c), tail)

    def evaluate(self, u: float, s: float, p: QParams) -> float:
        Y = float(u) ** float(p.alpha)
        w = float(s) ** float(p.alpha) / Y
        val = float(self.phi.num(w)) / float(self.phi.den(w))
        val += sum(float(g) * w ** (-(n + 1)) for n, g in enumerate(self.tail))
        return val * Y ** (-self.m)

    def __repr__(self) -> str:
        tail = f", tail[{len(self.tail)}]" if self.tail else ""
        return f"TransformExpr(m={self.m}, {self.phi!r}{tail})"


def natural_series(f: AlphaSeries) -> TransformExpr:
    """Term-wise transform: t^{alpha n} -> [n alpha]! Y^{-1} w^{-(n+1)}."""
    p = f.params
    N = f.order
    # sum c_n [n alpha]! w^{N-n} / w^{N+1}
    num = [0] * (N + 1)
    for n, c in enumerate(f.coeffs):
        num[N - n] = c * q_alpha_factorial(n, p)
    return TransformExpr(1, RationalFn(Poly(tuple(num)), Poly.monomial(N + 1)))


def natural_atom(atom: TimeAtom, p: QParams, tail_terms: int = DEFAULT_TAIL) -> TransformExpr:
    kind, v = atom.kind, atom.value
    one = Fraction(1) if p.is_exact else 1.0
    if kind == POWER:
        n = int(v)
        return TransformExpr(1, RationalFn(Poly((q_alpha_factorial(n, p),)), Poly.monomial(n + 1, one)))
    if kind == EXP:
        return TransformExpr(1, RationalFn(Poly((one,)), Poly((-v, one))))
    if kind == COS:
        return TransformExpr(1, RationalFn(Poly((0, one)), Poly((v * v, 0, one))))
    if kind == SIN:
        return TransformExpr(1, RationalFn(Poly((v,)), Poly((v * v, 0, one))))
    if kind == CAPEXP:
        Q = p.Q
        tail = tuple(Q ** (n * (n - 1) // 2) * v**n for n in range(tail_terms))
        return TransformExpr(1, RationalFn.zero(), tail)
    raise UnsupportedError(f"no transform for atom {atom!r}")


def natural_time_expr(e: TimeExpr, p: QParams, tail_terms: int = DEFAULT_TAIL) -> TransformExpr:
    out = TransformExpr.zero()
    for c, atom in e.terms:
        out = out + natural_atom(atom, p, tail_terms).scale(c)
    return out


def transform_of_derivative(R: TransformExpr, n: int, init) -> TransformExpr:
    """Transform of the n-th derivative from R = N(f) and (D^j f)(0), j < n."""
    if R.m != 1 and not R.is_zero():
        raise UnsupportedError(f"derivative theorem needs homogeneity 1, got m={R.m}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if len(init) != n:
        raise ValueError(f"need {n} initial values, got {len(init)}")
    out = TransformExpr(1, R.phi, R.tail).mul_w(n)
    # sum_j w^{n-1-j} init_j
    corr = Poly(tuple(init[n - 1 - k] for k in range(n)))
    return out - TransformExpr(1, RationalFn.from_poly(corr))


def _qdiff(phi: RationalFn, shifted: RationalFn, p: QParams) -> RationalFn:
    return (phi - shifted) * (1 / p.one_minus_q)


def dqa_in_s(R: TransformExpr, p: QParams) -> TransformExpr:
    """q,alpha-derivative in s: s -> qs acts as w -> Q w; raises m by one."""
    phi = _qdiff(R.phi, R.phi.scale_arg(p.Q), p).mul_w(-1)
    tail = ()
    if R.tail:
        tail = (0,) + tuple(
            g * (1 - p.Q ** (-(n + 1))) / p.one_minus_q for n, g in enumerate(R.tail)
        )
    return TransformExpr(R.m + 1, phi, tail)


def dqa_in_u(R: TransformExpr, p: QParams) -> TransformExpr:
    """q,alpha-derivative in u: u -> qu acts as Y -> Q Y, w -> w / Q; raises m."""
    Qm = p.Q ** (-R.m)
    phi = _qdiff(R.phi, R.phi.scale_arg(1 / p.Q) * Qm, p)
    tail = tuple(g * (1 - Qm * p.Q ** (n + 1)) / p.one_minus_q for n, g in enumerate(R.tail))
    return TransformExpr(R.m + 1, phi, tail)


def tpower_transform_via_s(R: TransformExpr, n: int, p: QParams) -> TransformExpr:
    """N(t^{alpha n} f) = (-1)^n Q^{C(n,2)} Y^n (D_s)^n R(u, q^{-n} s)."""
    out = R.subs_w(p.Q ** (-n))
    for _ in range(n):
        out = dqa_in_s(out, p)
    return out.times_y(n).scale((-1) ** n * p.Q ** (n * (n - 1) // 2))


def tpower_transform_via_u(R: TransformExpr, n: int, p: QParams) -> TransformExpr:
    """N(t^{alpha n} f) = w^{-n} (D_u)^n (Y^n R)."""
    out = R.times_y(n)
    for _ in range(n):
        out = dqa_in_u(out, p)
    return out.mul_w(-n)


def bnk_form(R: TransformExpr, n: int, p: QParams) -> TransformExpr:
    """N(t^{alpha n} f) = w^{-n} sum_k b_{n,k} Y^k (D_u)^k R."""
    b = bnk_table(n, p)[n]
    acc = TransformExpr.zero(R.m)
    deriv = R
    for k in range(n + 1):
        acc = acc + deriv.times_y(k).scale(b[k])
        deriv = dqa_in_u(deriv, p)
    return acc.mul_w(-n)


__all__ = [
    "TransformExpr",
    "bnk_form",
    "dqa_in_s",
    "dqa_in_u",
    "natural_atom",
    "natural_series",
    "natural_time_expr",
    "tpower_transform_via_s",
    "tpower_transform_via_u",
    "transform_of_derivative",
]
