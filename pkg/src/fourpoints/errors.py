"""Exception hierarchy shared by all modules."""


class FourPointsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FourPointsError, ValueError):
    """Argument lies outside the domain of the operation."""


class DegenerateInput(DomainError):
    """Points that must be pairwise distinct coincide."""


class DegenerateTriple(DegenerateInput):
    pass


class PreconditionViolation(DomainError):
    pass


class InvariantViolation(DomainError):
    """A curve-form parameter breaks the non-singularity conditions."""


class ConcyclicInput(DomainError):
    """Four points lie on one generalized circle."""


class UnsupportedDegree(DomainError):
    pass


class DegenerateAlpha(FourPointsError, ArithmeticError):
    """The Cardano term vanishes; use a general solver instead."""


class NonConvergence(FourPointsError, ArithmeticError):
    pass


class NoValidRoot(FourPointsError, ArithmeticError):
    pass


class VerificationFailure(FourPointsError):
    """A numerical self-check failed. ``report`` holds the full result."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ParseError(FourPointsError, ValueError):
    def __init__(self, message, text="", offset=0):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.text = text
        self.offset = offset
