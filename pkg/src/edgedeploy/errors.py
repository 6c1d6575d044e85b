"""Exception hierarchy shared by the model, optimizer and simulator."""


class EdgeDeployError(ValueError):
    """Base class for all domain errors raised by this package."""


class InvalidParameters(EdgeDeployError):
    pass


class InvalidPosition(EdgeDeployError):
    pass


class InvalidPower(EdgeDeployError):
    pass


class InfeasibleDensity(InvalidParameters):
    """Cluster size below the cooperation reach (M < L)."""


class InvalidDensity(InvalidParameters):
    pass


class InfeasibleAdjustment(EdgeDeployError):
    """No compensating parameter value exists.

    ``value`` carries the computed (out-of-range) number when there is one,
    e.g. a cache ratio above 1.
    """

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class DegenerateAdjustment(InvalidParameters):
    pass


class LibraryTooSmall(EdgeDeployError):
    pass
