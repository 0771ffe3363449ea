"""Exception hierarchy shared by every module of the package."""


class CDLevelError(Exception):
    """Base class for all errors raised by cdlevel."""


class InvalidFieldError(CDLevelError):
    """Field descriptor violates its invariants (char 2, non-prime modulus, nested function field)."""


class MixedFieldsError(CDLevelError):
    pass


class DivisionByZeroError(CDLevelError, ZeroDivisionError):
    pass


class ZeroInputError(CDLevelError):
    pass


class NotMonomialError(CDLevelError):
    """A function-field scalar has no signed-monomial square class."""


class DimensionMismatchError(CDLevelError):
    pass


class ZeroScaleError(CDLevelError):
    pass


class ZeroParameterError(CDLevelError):
    pass


class NoLeadingOneError(CDLevelError):
    pass


class DegenerateResultError(CDLevelError):
    pass


class SignUndeterminedError(CDLevelError):
    pass


class WrongFieldError(CDLevelError):
    pass


class FactorizationBudgetExceeded(CDLevelError):
    def __init__(self, n: int, bound: int):
        super().__init__(f"cofactor {n} could not be factored by trial division up to {bound}")
        self.n = n
        self.bound = bound


class NotMonomialFormError(CDLevelError):
    pass


class BadWittIndexError(CDLevelError):
    pass


class ZeroGammaError(CDLevelError):
    pass


class DimensionBudgetExceeded(CDLevelError):
    pass


class MixedAlgebrasError(CDLevelError):
    pass


class EnumerationBudgetExceeded(CDLevelError):
    pass


class HypothesisViolation(CDLevelError):
    """A criterion was invoked outside the hypotheses under which it is valid."""


class UnknownVerdictError(CDLevelError):
    """An isotropy decision needed by a criterion came back Unknown."""

    def __init__(self, message: str, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class CertificateContradiction(CDLevelError):
    """Two certificates produced disjoint intervals. Should never happen."""
