"""Exception hierarchy for the cavity force model."""


class CavityModelError(Exception):
    """Base class for all model-specific failures."""


class ValidationError(CavityModelError, ValueError):
    """An input violates a documented invariant (bad geometry, bad range)."""


class DomainError(CavityModelError):
    """An intermediate value left the mathematically valid domain.

    Raised e.g. when an arccos argument is further than the clamping
    tolerance outside [-1, 1], which signals an invalid geometry rather
    than floating-point noise.
    """


class SingularityError(CavityModelError):
    """A denominator hit (or got too close to) an exact zero."""


class ConvergenceError(CavityModelError):
    """Adaptive quadrature exhausted its subdivision budget.

    Carries the best available estimate and its error bound so callers
    can decide whether the partial result is still usable.
    """

    def __init__(self, message, best_estimate=None, error_bound=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_bound = error_bound
