"""Exception hierarchy shared by every mvk module."""


class MVKError(Exception):
    """Base class for all errors raised by mvk."""


class DomainError(MVKError, ValueError):
    """An argument lies outside the domain of the operation."""


class DivergentIndex(MVKError):
    """A nested sum or iterated integral diverges and cannot be evaluated."""


class DivergentCombination(DivergentIndex):
    """A relation still contains a divergent term after regularisation."""


class BudgetExceeded(MVKError):
    """The requested accuracy was not reached within the term budget."""


class QuadratureFailure(MVKError):
    """Numerical integration stalled before reaching the target accuracy."""


class BoundMismatch(MVKError, ValueError):
    """Two iterated-integral words with different bounds were combined."""


class ArgumentNotUnit(MVKError, ValueError):
    """A polylogarithm argument is not a 4th root of unity."""


class NotConvergent(MVKError, ValueError):
    """A word was expected to be convergent but is not."""


class MalformedWord(MVKError, ValueError):
    """A word cannot be converted to a polylogarithm index."""


class OrderExceeded(MVKError, IndexError):
    """A coefficient beyond the truncation order of a series was requested."""


class UnknownName(MVKError, KeyError):
    """No series builder is registered under the requested name."""


class ParseError(MVKError, ValueError):
    """Text could not be parsed as a value specification or expression."""
