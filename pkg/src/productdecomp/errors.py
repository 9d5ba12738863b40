"""Exception types raised by the decomposition toolkit."""


class DecompError(ValueError):
    """Base class for all errors raised by this package."""


class ShapeError(DecompError):
    """Array length or register size does not match what the operation needs."""


class ValidationError(DecompError):
    """A value violates an invariant (e.g. a matrix that is not unitary)."""


class RangeError(DecompError):
    """An integer argument lies outside its allowed range."""


class DegenerateStateError(DecompError):
    """The zero vector was passed where a nonzero state is required."""


class LeadingUndefinedError(DecompError):
    """The empty-simplex amplitude vanishes, so the leading vector is undefined."""


class PreconditionError(DecompError):
    """Arguments violate an operation's stated precondition."""


class CostGuardError(DecompError):
    """The requested brute-force computation is too large."""


class NotProductError(DecompError):
    """The state fails the exchangeability test.

    ``triple`` is the ``(s, t, v)`` with the largest defect and ``defect`` its value.
    """

    def __init__(self, message, triple=None, defect=None):
        super().__init__(message)
        self.triple = triple
        self.defect = defect
