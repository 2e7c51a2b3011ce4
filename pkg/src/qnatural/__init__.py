"""Conformable fractional q-calculus, the q,alpha-Natural transform and a
solver for linear constant-coefficient q,alpha-differential equations."""

from .alphaseries import (
    AlphaSeries,
    CapExp,
    Cos,
    Exp,
    Power,
    Sin,
    TimeAtom,
    TimeExpr,
    inv_e_kernel,
    series_eval,
)
from .errors import (
    ConvergenceError,
    DegreeError,
    DomainError,
    ModeError,
    MultiplicityError,
    QNaturalError,
    UnsupportedError,
    UnsupportedFactorError,
)
from .inverse import invert, partial_fractions
from .odesolver import ODEProblem, solve_ivp
from .oracle import QuadratureReport, natural_numeric
from .qcalculus import dqa_series, iqa_series, taylor_qa
from .qcore import QParams, beta_qa, gamma_qa, q_alpha_factorial, qa_number
from .transform import TransformExpr, natural_series, natural_time_expr, transform_of_derivative

__version__ = "0.1.0"

__all__ = [
    "AlphaSeries",
    "CapExp",
    "ConvergenceError",
    "Cos",
    "DegreeError",
    "DomainError",
    "Exp",
    "ModeError",
    "MultiplicityError",
    "ODEProblem",
    "Power",
    "QNaturalError",
    "QParams",
    "QuadratureReport",
    "Sin",
    "TimeAtom",
    "TimeExpr",
    "TransformExpr",
    "UnsupportedError",
    "UnsupportedFactorError",
    "beta_qa",
    "dqa_series",
    "gamma_qa",
    "inv_e_kernel",
    "invert",
    "iqa_series",
    "natural_numeric",
    "natural_series",
    "natural_time_expr",
    "partial_fractions",
    "q_alpha_factorial",
    "qa_number",
    "series_eval",
    "solve_ivp",
    "taylor_qa",
    "transform_of_derivative",
]
