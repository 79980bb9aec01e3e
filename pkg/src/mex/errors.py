"""Exception hierarchy shared by every module.

The CLI maps each family to an exit code, see ``mex.cli.EXIT_CODES``.
"""


class MexError(Exception):
    """Base class for all library errors."""


class InvalidInput(MexError):
    """Malformed instance, pair, weight or sequence data."""


class DomainError(InvalidInput, ValueError):
    """A parameter lies outside the domain an operation accepts."""


class IncompatiblePairs(InvalidInput):
    """Two basis pairs do not cover the same set of elements."""


class InvalidPair(InvalidInput):
    """A pair is not an ordered pair of disjoint bases."""


class NotAColoring(InvalidPair):
    """A wheel coloring whose color classes are not both spanning trees."""


class NotABasis(InvalidInput):
    pass


class NotBipartite(InvalidInput):
    """The union of the two bijection matchings has an odd cycle."""


class TooLarge(InvalidInput):
    """Exhaustive search refused because the instance exceeds a guard."""


class InfeasibleExchange(MexError):
    """An exchange does not keep both color classes bases."""


class PreconditionViolation(MexError):
    """A solver was called outside the case it handles."""


class OrientationMismatch(PreconditionViolation):
    pass


class InternalBoundViolation(MexError):
    """A constructed sequence misses a guaranteed bound (a bug, never expected)."""


class CompletionNotFound(InternalBoundViolation):
    pass


class NotFound(MexError):
    """A witness search came back empty."""
