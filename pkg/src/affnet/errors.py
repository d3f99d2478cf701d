"""Exception hierarchy shared by all affnet modules."""


class AffnetError(Exception):
    """Base class for all errors raised by this package."""


class IndexOutOfRangeError(AffnetError):
    """A node or layer index falls outside the declared ranges."""


class SelfLoopError(AffnetError):
    """A link connects a node to itself."""


class AffiliationViolationError(AffnetError):
    """A link's layer pair contradicts the affiliations of its endpoints."""


class OverlapViolationError(AffnetError):
    """A node pair is present in three or more layers."""


class InvalidSliceError(AffnetError):
    """A slice does not exist for the given network."""


class LinkNotFoundError(AffnetError):
    """The queried node pair has no link in the network."""


class IndeterminateOrderingError(AffnetError):
    """Layer ordering of a directed link cannot be resolved."""


class InsufficientDataError(AffnetError):
    """Not enough data to perform a fit or binning."""


class DegenerateInputError(AffnetError):
    """Input has zero variance or too few points for a correlation."""


class ParseError(AffnetError):
    """A data file could not be parsed.

    Carries the 1-based line number when it is known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class MissingAffiliationError(AffnetError):
    """An edge endpoint has no affiliation assignment (strict ingestion)."""
