"""Exception hierarchy shared by all netrating modules."""


class NetRatingError(Exception):
    """Base class for every error raised by netrating."""


class InvalidInstanceError(NetRatingError, ValueError):
    """A network, profile or instance violates a construction invariant."""


class InvalidPlacementError(InvalidInstanceError):
    """A placement of customers on a shape is not a valid bijection or strands a customer."""


class UndefinedWeightError(NetRatingError, ValueError):
    """An influence weight was requested for a customer whose neighbour sees no voter."""


class BudgetError(NetRatingError, ValueError):
    """A strategy spends more than the initial utility of the rating system."""


class NotDisjointError(NetRatingError, ValueError):
    """Two strategies bribing a common customer were composed."""


class PreconditionError(NetRatingError, ValueError):
    """An operation was called outside the setting where it is defined."""


class EnumerationCapError(NetRatingError, RuntimeError):
    """An exhaustive enumeration would exceed the configured cap."""


class ParseError(NetRatingError, ValueError):
    """An input file could not be parsed.

    Parameters
    ----------
    message : str
        What went wrong.
    path : str, optional
        File being parsed.
    line : int, optional
        1-based line number of the offending line.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
