"""Exception hierarchy. CLI exit codes: 2 for validation, 3 for computation."""


class MultijointError(Exception):
    exit_code = 3


class ValidationError(MultijointError, ValueError):
    exit_code = 2


class ZeroDirection(ValidationError):
    pass


class ZeroPolynomial(MultijointError, ValueError):
    pass


class SearchBudgetExceeded(MultijointError):
    pass


class EmptyThresholdSet(MultijointError):
    pass


class LineNotInZeroSet(MultijointError, ValueError):
    pass


class BisectionFailed(MultijointError):
    pass


class NotZeroDimensional(MultijointError):
    pass


class GenericityFailure(MultijointError):
    pass


class UndecidedPredicate(MultijointError):
    """Raised when an exact zero test on algebraic data is beyond the supported cases."""
