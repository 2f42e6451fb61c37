"""Domain errors shared across the package.

Every exception below signals a violated operation contract (as opposed to
malformed usage, which raises ValueError/TypeError). They all derive from
DomainError so callers -- the CLI in particular -- can map them to a single
exit status.
"""


class DomainError(Exception):
    """Base class for contract violations detectable at finite precision."""


class NotAUnit(DomainError):
    """Inversion was requested for an element of positive valuation."""


class WidegNotCertified(DomainError):
    """No unit coefficient below the X-precision: the Weierstrass degree
    cannot be distinguished from +infinity at this truncation."""


class CompositionDomain(DomainError):
    """Inner series of a composition has a constant term not certified zero."""


class InsufficientXPrecision(DomainError):
    """The X-truncation is too short for the requested operation."""


class NoUnitCoefficient(DomainError):
    """A restricted series has no unit coefficient below its X-precision."""


class IndeterminateAtPrecision(DomainError):
    """A comparison needs an index that the truncation leaves undetermined."""


class BudgetExhausted(DomainError):
    """The randomized search ran out of candidates without certifying one.

    Not a disproof: a larger budget or precision may still succeed.
    """


class TruncationOverflow(DomainError):
    """A truncated universal computation exceeded its term budget."""

    def __init__(self, message: str, order_reached: int | None = None):
        super().__init__(message)
        self.order_reached = order_reached


class IntegralityViolation(DomainError):
    """A coefficient that must be an integer failed the exactness check."""
