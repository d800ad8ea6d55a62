"""Exception hierarchy shared across the package."""


class NilconeError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(NilconeError):
    """Malformed algebra file or certificate file."""


class SingularMatrixError(NilconeError):
    """Attempted to invert a singular matrix."""


class NotADerivationError(NilconeError):
    """A vector or matrix claimed to be a derivation is not one."""


class InvariantViolation(NilconeError):
    """An internal consistency check failed; indicates a bug."""


class UnknownCatalogEntry(NilconeError):
    """Requested catalog id does not exist."""
