"""Exception hierarchy shared by every module of the package."""


class ToricSlopeError(Exception):
    """Base class for all errors raised by toricslope."""


class PolygonError(ToricSlopeError, ValueError):
    """Invalid lattice polygon."""


class DiagramError(ToricSlopeError, ValueError):
    """Invalid Newton diagram or weight assignment."""


class ConsistencyError(ToricSlopeError):
    """An internal invariant failed; indicates a hull or membership bug."""


class QuadratureError(ToricSlopeError):
    """Numerical integration failed to reach the requested tolerance.

    ``best`` carries the best estimate available when the failure occurred.
    """

    def __init__(self, message, best=None, error=None, evaluations=0):
        super().__init__(message)
        self.best = best
        self.error = error
        self.evaluations = evaluations


class DivergentIntegralError(QuadratureError):
    """The requested face integral does not converge."""
