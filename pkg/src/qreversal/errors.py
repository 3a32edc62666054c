"""Exception hierarchy shared by all modules."""


class QReversalError(ValueError):
    """Base class for every error raised by this package."""


class DimensionMismatch(QReversalError):
    pass


class NotHermitian(QReversalError):
    pass


class NotPositive(QReversalError):
    pass


class SingularState(QReversalError):
    """A state that must be inverted has a (numerically) zero eigenvalue."""


class NotUnital(QReversalError):
    """The dual of a non-unital map is not trace preserving."""


class WrongKrausCount(QReversalError):
    pass


class NonUniqueFixedPoint(QReversalError):
    pass


class InvalidChannel(QReversalError):
    """Kraus operators fail the identity resolution.

    ``residual`` holds the Frobenius norm of ``sum(A^dag A) - 1``.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class UndefinedTransition(QReversalError):
    """Both the forward and the reversed transition probability vanish."""
