"""Exception and warning types shared across the package."""


class HarmanaError(Exception):
    """Base class for all package errors."""


class DivergentMeasure(HarmanaError, ValueError):
    """The weighted measure of the requested disk is infinite (r = 1, alpha <= -1)."""


class InvalidAlpha(HarmanaError, ValueError):
    """The weight exponent lies outside the domain of the requested quantity."""


class SingularPoint(HarmanaError, ArithmeticError):
    """A formula with a negative power of |f| was evaluated at a zero of f."""


class ParseError(HarmanaError, ValueError):
    """A coefficient file does not match the expected schema."""


class NonFiniteNumber(ParseError):
    """A coefficient file contains NaN or an infinity."""


class NonConvergenceWarning(RuntimeWarning):
    """Node doubling hit its cap before the tolerance was met; the estimate is still returned."""
