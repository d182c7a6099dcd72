"""Exception types shared across the package."""


class HurwitzError(Exception):
    """Base class for all package-specific errors."""


class DivisionByZero(HurwitzError, ZeroDivisionError):
    """Division by a zero Gaussian rational."""


class NotInFundamentalDomain(HurwitzError):
    """Input to the Gauss map does not round to 0."""


class InadmissibleDigit(HurwitzError):
    """A continued-fraction digit a_n (n >= 1) with |a_n|^2 < 2."""


class EvaluationSingularity(HurwitzError, ZeroDivisionError):
    """A tail of a finite continued fraction evaluates to 0 where inverted."""


class DigitUncertain(HurwitzError):
    """Ball expansion cannot certify a digit at the given step.

    Callers should raise precision_bits and retry.
    """

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"digit uncertain at step {step}")


class ZeroStraddle(HurwitzError):
    """A ball to be inverted contains 0."""

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"ball straddles 0 at step {step}")


class UnsupportedConstraint(HurwitzError):
    """A region constraint fell outside the closed constraint family.

    This would falsify the finiteness of the cylinder-shape census and
    must be surfaced, never swallowed.
    """


class BudgetExceeded(HurwitzError):
    """The census shape count exceeded its configured cap."""


class InsufficientHits(HurwitzError):
    """Too few Monte Carlo hits to report a statistical verdict."""

    def __init__(self, hits, needed, message=None):
        self.hits = hits
        self.needed = needed
        super().__init__(message or f"only {hits} hits, need {needed}")


class InvalidDigit(HurwitzError):
    """A requested digit violates the admissibility bound |b|^2 >= 2."""
