"""Exception types shared across the package."""


class ArcintError(Exception):
    """Base class for all package-specific errors."""


class GammaPoleError(ArcintError):
    """A gamma factor was requested at a non-positive integer."""


class DivergentIntegralError(ArcintError):
    """Integral parameters violate the convergence condition."""


class BudgetExhaustedError(ArcintError):
    """An adaptive routine hit its subdivision cap before reaching tolerance."""


class TruncationError(ArcintError):
    """A K-type re-expansion left more tail mass than the tolerance allows."""


class UnpinnedCoefficientError(ArcintError):
    """A closed-form evaluation depends on Whittaker coefficients that are not pinned."""


class SelectionRuleError(ArcintError):
    """Weights passed to a local integral are incompatible with its index sets."""
