"""Exception types shared across the package."""


class QscError(Exception):
    """Base class for all package errors."""


class ParseError(QscError):
    """Malformed state literal or option value."""


class NumericsError(QscError):
    """A numerical contract was violated (degenerate density, truncation
    deficit, overflow guard, resource cap, non-convergent quadrature)."""
