"""Exception hierarchy for series evaluation and identity verification."""


class HyperidError(Exception):
    """Base class for all errors raised by this package."""


class PoleError(HyperidError):
    """A gamma argument landed on (or within margin of) a nonpositive integer."""


class IndeterminateError(HyperidError):
    """Numerator and denominator poles coincide; cancel symbolically first."""


class DivisionByZero(HyperidError):
    """A denominator factor of a finite product is exactly zero."""


class LowerPoleError(HyperidError):
    """A denominator parameter truncates the series before its terminating index."""


class DivergentError(HyperidError):
    """The series diverges at the given argument."""


class NotConvergent(DivergentError):
    """Bilateral series outside its convergence condition."""


class BudgetExceeded(HyperidError):
    """max_terms was exhausted before the stopping rule fired."""


class AccelerationFailed(HyperidError):
    """Sequence transformation stagnated above the requested tolerance."""


class NumericalBreakdown(HyperidError):
    """Epsilon-table entries too close; no usable extrapolation."""


class DomainError(HyperidError):
    """Arguments outside the operation's domain (|q| >= 1, bad annulus, ...)."""


class SamplingExhausted(HyperidError):
    """Rejection sampling could not satisfy the constraints within its cap."""


class UnknownIdentityError(HyperidError):
    """Identity ID not present in the catalog."""
