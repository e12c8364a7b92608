"""Exception types shared across the package."""


class BarrierSpectraError(Exception):
    """Base class for all package errors."""


class RootFindingError(BarrierSpectraError):
    """Simultaneous iteration did not converge; carries the worst residual."""

    def __init__(self, message, worst_residual=None):
        super().__init__(message)
        self.worst_residual = worst_residual


class NewtonError(BarrierSpectraError):
    """Newton refinement diverged or hit a vanishing derivative; carries the last iterate."""

    def __init__(self, message, last_iterate=None):
        super().__init__(message)
        self.last_iterate = last_iterate


class BoundaryProximityError(BarrierSpectraError):
    """A zero lies too close to the integration contour for reliable counting."""


class SingularInputError(BarrierSpectraError):
    """Input sits on (or numerically at) a singularity of the requested formula."""


class CertificationError(BarrierSpectraError):
    """An independent oracle disagreed with the computed result."""


class ValidationError(BarrierSpectraError):
    """Invalid configuration or parameters (rejected before any computation)."""
