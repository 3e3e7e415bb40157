"""Exception types shared across the package."""


class DslabError(Exception):
    """Base class for package-specific failures."""


class FeasibilityError(DslabError):
    """Exact computation would exceed the configured work cap.

    Raised by the exact block statistics when a block is too populous;
    callers should fall back to the Monte Carlo estimator.
    """


class UndecidedBoundaryError(DslabError):
    """A certified transcendental comparison stayed ambiguous at the
    maximum working precision (1024 bits)."""


class ZeroDenominatorError(DslabError):
    """The second-moment denominator of a Borel-Cantelli bound is zero."""
