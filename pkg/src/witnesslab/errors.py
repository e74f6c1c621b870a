"""Exception taxonomy shared by the whole package.

The CLI maps these onto its exit-code contract: usage errors exit 1,
DomainError 2, InconclusiveError (including SearchExhausted) 3 and
ResourceError 4.
"""


class WitnesslabError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(WitnesslabError, ValueError):
    """An argument violates a documented precondition."""


class ResourceError(WitnesslabError, RuntimeError):
    """A computation exceeded its configured budget (e.g. factorization)."""


class InconclusiveError(WitnesslabError, RuntimeError):
    """A bounded procedure finished without reaching a verdict.

    This is explicitly *not* a negative answer: it means "not decided
    within the budget", never "proved impossible".
    """


class SearchExhausted(InconclusiveError):
    """A bounded enumeration ran out of candidates."""
