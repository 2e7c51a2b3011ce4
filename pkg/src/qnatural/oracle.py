"""Independent numeric q,alpha-integrals by truncated Jackson sums.

Nothing here uses a closed form: integrals are sums over the geometric grid
``c q^j`` weighted by ``(1 - q) (c q^j)^alpha``, and the transform kernel is
always the infinite product from :func:`inv_e_kernel`.

The improper integral depends on the grid scale ``c``.  The closed forms
only hold when the boundary term ``1/e`` vanishes at infinity along the
grid, i.e. when the grid sits on the zeros of the kernel; the defaults below
choose that scale.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

from .alphaseries import inv_e_kernel
from .qcore import QParams

DEFAULT_J = 200
DEFAULT_TOL = 1e-10

Evaluator = Callable[[float], float]


@dataclass(frozen=True)
class QuadratureReport:
    value: float
    terms_used: int
    tail_bound: float
    converged: bool

    def to_json(self) -> dict:
        return asdict(self)


def _fsum_small_first(terms: list[float]) -> float:
    return math.fsum(sorted(terms, key=abs))


def kernel_grid_scale(p: QParams, s: float = 1.0) -> float:
    """Grid scale c with (1 - q) (s c)^alpha = 1, where the kernel 1/e(q s t)
    vanishes on every grid point c q^j with j < 0."""
    return 1.0 / (float(s) * float(p.one_minus_q) ** (1.0 / float(p.alpha)))


def jackson_integral_0_inf(
    f: Evaluator,
    p: QParams,
    J: int = DEFAULT_J,
    tol: float = DEFAULT_TOL,
    scale: float | None = None,
) -> QuadratureReport:
    """(1 - q) sum_{j=-J}^{J} (c q^j)^alpha f(c q^j)."""
    c = kernel_grid_scale(p) if scale is None else float(scale)
    q, a, omq = float(p.q), float(p.alpha), float(p.one_minus_q)
    terms = []
    for j in range(-J, J + 1):
        x = c * q**j
        fx = f(x)
        terms.append(omq * x**a * fx if fx != 0 else 0.0)
    if not all(math.isfinite(t) for t in terms):
        # overflowing integrand on this grid
        return QuadratureReport(math.nan, len(terms), math.inf, False)
    value = _fsum_small_first(terms)
    Q = float(p.Q)
    upper = abs(terms[-1]) * Q / (1 - Q)
    lower = abs(terms[0])
    tail = upper + lower
    return QuadratureReport(value, len(terms), tail, tail < tol)


def jackson_integral_0_1(
    f: Evaluator, p: QParams, J: int = DEFAULT_J, tol: float = DEFAULT_TOL
) -> QuadratureReport:
    """(1 - q) sum_{j=0}^{J} Q^j f(q^j)."""
    q, Q, omq = float(p.q), float(p.Q), float(p.one_minus_q)
    terms = [omq * Q**j * f(q**j) for j in range(J + 1)]
    value = _fsum_small_first(terms)
    tail = abs(terms[-1]) * Q / (1 - Q)
    return QuadratureReport(value, len(terms), tail, tail < tol)


def natural_numeric(
    f: Evaluator,
    u: float,
    s: float,
    p: QParams,
    J: int = DEFAULT_J,
    tol: float = DEFAULT_TOL,
) -> QuadratureReport:
    """Numeric transform: integral of f(u t) / e(q s t) over (0, inf)."""
    if s <= 0 or u <= 0:
        raise ValueError(f"need u > 0 and s > 0, got u={u}, s={s}")
    q = float(p.q)
    u, s = float(u), float(s)

    def integrand(t: float) -> float:
        k = inv_e_kernel(q * s * t, p)
        if k == 0:
            return 0.0
        return f(u * t) * k

    return jackson_integral_0_inf(integrand, p, J, tol, scale=kernel_grid_scale(p, s))


def gamma_numeric(n: int, p: QParams, J: int = DEFAULT_J, tol: float = DEFAULT_TOL) -> QuadratureReport:
    """Gamma_{q,alpha}(n) = integral of x^{alpha(n-1)} / e(qx)."""
    a, q = float(p.alpha), float(p.q)

    def integrand(x: float) -> float:
        k = inv_e_kernel(q * x, p)
        return 0.0 if k == 0 else x ** (a * (n - 1)) * k

    return jackson_integral_0_inf(integrand, p, J, tol)


def beta_numeric(m: int, n: int, p: QParams, J: int = DEFAULT_J, tol: float = DEFAULT_TOL) -> QuadratureReport:
    """B_{q,alpha}(m, n) = integral over [0, 1] of x^{alpha(m-1)} (1 - Q x^alpha)^{n-1}_{q^alpha}."""
    a, Q = float(p.alpha), float(p.Q)

    def integrand(x: float) -> float:
        X = x**a
        out = X ** (m - 1)
        for i in range(n - 1):
            out *= 1 - Q ** (i + 1) * X
        return out

    return jackson_integral_0_1(integrand, p, J, tol)


__all__ = [
    "QuadratureReport",
    "beta_numeric",
    "gamma_numeric",
    "jackson_integral_0_1",
    "jackson_integral_0_inf",
    "kernel_grid_scale",
    "natural_numeric",
]
