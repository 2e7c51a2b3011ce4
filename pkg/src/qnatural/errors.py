"""Exception hierarchy shared by all modules."""


class QNaturalError(Exception):
    """Base class for every error raised by the package."""


class ModeError(QNaturalError):
    """Exact/float arithmetic mode violated (inexpressible power, mixed scalars)."""


class DomainError(QNaturalError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ConvergenceError(QNaturalError):
    """A truncated sum or product did not reach the requested accuracy."""


class UnsupportedError(QNaturalError):
    """The input lies outside what the symbolic machinery can handle."""


class UnsupportedFactorError(UnsupportedError):
    """Denominator does not factor into w^k, rational linear factors and w^2 + d."""


class MultiplicityError(UnsupportedError):
    """Repeated nonzero pole or repeated quadratic factor."""


class DegreeError(UnsupportedError):
    """Improper rational function where a proper one is required."""
