"""Exception hierarchy shared by every module."""


class RiemannLieError(Exception):
    """Base class for all errors raised by the package."""


class InputError(RiemannLieError, ValueError):
    """Malformed or mismatched input (shapes, indices, degenerate data)."""


class PreconditionError(RiemannLieError):
    """A mathematical hypothesis required by an operation does not hold."""


class NumericalInconsistencyError(RiemannLieError, ArithmeticError):
    """Two independent routes to the same quantity disagree beyond tolerance."""
