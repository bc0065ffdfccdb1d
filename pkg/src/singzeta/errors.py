"""Exception hierarchy shared by every singzeta module."""


class SingZetaError(Exception):
    """Base class for library errors."""


class NotDivisible(SingZetaError, ArithmeticError):
    pass


class PoleAtOne(SingZetaError, ArithmeticError):
    """A factor (U-1) survived in a denominator that is being evaluated at U=1."""


class NotExpandable(SingZetaError, ArithmeticError):
    """The denominator has zero constant term, so no power series exists."""


class NotCoprime(SingZetaError, ValueError):
    pass


class DimensionMismatch(SingZetaError, ValueError):
    pass


class NotUnibranch(SingZetaError, ValueError):
    pass


class InvalidSemigroup(SingZetaError, ValueError):
    """Raised with the list of violated invariants, each carrying a witness."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid semigroup")


class WorkLimitExceeded(SingZetaError, RuntimeError):
    pass


class TruncationTooSmall(SingZetaError, ValueError):
    pass


class UnsupportedModel(SingZetaError, ValueError):
    pass
