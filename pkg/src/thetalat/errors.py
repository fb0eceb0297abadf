"""Exception types shared across the package."""


class ThetalatError(Exception):
    """Base class for package errors."""


class InvalidRank(ThetalatError):
    """Requested root-system rank outside the supported range."""


class UnknownLabel(ThetalatError):
    """Unknown lattice or table label."""


class ConstructionFailure(ThetalatError):
    """An assembled lattice failed its invariant checks."""


class NotPositiveDefinite(ThetalatError):
    """A Gram matrix expected to be positive definite is not."""


class BudgetExceeded(ThetalatError):
    """A computation exceeded its node/vector budget.

    Carries a `checkpoint` attribute when partial results were saved.
    """

    def __init__(self, msg, checkpoint=None):
        super().__init__(msg)
        self.checkpoint = checkpoint


class ShellMissing(ThetalatError):
    """A required short-vector shell is not available at the cached bound."""


class CacheMiss(ThetalatError):
    """No usable cache entry for the request."""


class CorruptCache(ThetalatError):
    """A cache entry failed its integrity checks."""


class BoxUnderflow(ThetalatError):
    """A congruence check was requested beyond the computed coefficient box."""


class AssertionUnverified(ThetalatError):
    """A transitivity assertion was used without recorded cross-validation."""
