"""Exception types shared across the package."""


class LssPhaseError(Exception):
    """Base class for all package-specific errors."""


class InvalidStateError(LssPhaseError, ValueError):
    """A state specification violates a precondition (parity, range, ...)."""


class DegenerateStateError(InvalidStateError):
    """The requested state has a trivial (uniform) phase distribution."""


class EmptyProjectionError(LssPhaseError):
    """The fixed-photon-number component of a state has negligible weight."""


class IntegrandError(LssPhaseError, ValueError):
    """The integrand returned a non-finite value at a quadrature node."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class NonConvergenceError(LssPhaseError, RuntimeError):
    """Adaptive quadrature hit its depth cap before reaching the tolerance."""

    def __init__(self, message, worst_interval=None, error_estimate=None):
        super().__init__(message)
        self.worst_interval = worst_interval
        self.error_estimate = error_estimate
