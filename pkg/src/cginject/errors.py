"""Exception hierarchy shared by every module."""


class CginjectError(Exception):
    """Base class for all library errors."""


class MalformedInputError(CginjectError, ValueError):
    pass


class UnsupportedRingError(CginjectError, TypeError):
    pass


class ShapeError(MalformedInputError):
    pass


class KernelNotFiniteError(CginjectError):
    """Closure of the kernel generators exceeded the enumeration cap."""


class HypothesisViolation(CginjectError):
    """A hypothesis of the injectivity theorem (or its corollaries) fails."""

    def __init__(self, message, check=None):
        super().__init__(message)
        self.check = check


class SearchExhaustedError(CginjectError):
    pass


class InvarianceViolation(CginjectError):
    pass


class DecompositionError(CginjectError):
    pass


class CertificateInvalidError(CginjectError):
    pass


class NotAcyclicError(CginjectError):
    def __init__(self, degree):
        super().__init__(f"complex is not acyclic mod p at degree {degree}")
        self.degree = degree


class RelatorViolation(CginjectError):
    def __init__(self, relator):
        super().__init__(f"relator does not map to the identity: {relator}")
        self.relator = relator


class PresentationSyntaxError(MalformedInputError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class RetryBudgetExhausted(CginjectError):
    pass


class TheoremFalsification(CginjectError):
    """Hypotheses hold but the conclusion fails. Should never happen."""

    def __init__(self, verdict):
        super().__init__(f"injectivity theorem falsified: {verdict}")
        self.verdict = verdict
