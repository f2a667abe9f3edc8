"""Exception hierarchy.

Errors split into two families so callers (and the command line) can tell a
bad request apart from a numerical failure: ``ValueError`` subclasses flag
contract violations on the inputs, ``NumericalError`` subclasses flag
failures of root finding, quadrature or phase unwrapping.
"""


class MagnonBLSError(Exception):
    """Base class for every error raised by this package."""


class NumericalError(MagnonBLSError, RuntimeError):
    """A numerical procedure failed to produce a trustworthy result."""


class DomainError(MagnonBLSError, ValueError):
    """Argument outside the domain of a special function."""


class NoSignChangeError(NumericalError):
    pass


class MaxIterationError(NumericalError):
    pass


class RootNotFoundError(NumericalError):
    pass


class NoInteriorMaximumError(NumericalError):
    pass


class DegenerateEnvelopeError(NumericalError):
    pass


class WindingInconsistencyError(NumericalError):
    pass


class ZeroNormError(NumericalError):
    pass


class InvalidComponentError(MagnonBLSError, ValueError):
    """Polarization/component combination that does not exist (e.g. TE inner)."""


class PolarizationMismatchError(MagnonBLSError, ValueError):
    pass


class NonphysicalIndexError(MagnonBLSError, ValueError):
    pass


class GridMismatchError(MagnonBLSError, ValueError):
    pass


class EmptyCatalogError(MagnonBLSError, ValueError):
    pass


class DisallowedChannelError(MagnonBLSError, ValueError):
    pass


class ConfigError(MagnonBLSError, ValueError):
    """Invalid configuration document.

    ``field`` is a dotted path to the offending entry and ``line`` its line
    in the source text, when known.
    """

    def __init__(self, message, field=None, line=None):
        super().__init__(message)
        self.field = field
        self.line = line


class MissingModeError(MagnonBLSError, LookupError):
    """A required mode is absent from a supplied catalog."""
