"""Exception types shared across the package."""


class SwarmShapeError(Exception):
    """Base class for all package errors."""


class DegenerateRegion(SwarmShapeError):
    """Region has no usable area (below tolerance, or collapsed)."""


class RegionTooThin(SwarmShapeError):
    """Rejection sampling acceptance rate fell below the safe threshold."""


class DomainError(SwarmShapeError):
    """Numeric argument outside the domain of a closed-form expression."""


class StateError(SwarmShapeError):
    """Simulator state is invalid (bad shape, robot outside workspace, ...)."""


class TaskError(SwarmShapeError):
    """Positioning task is malformed or a plan failed verification."""


class ZoneError(SwarmShapeError):
    """Staging/build zone layout violates workspace constraints."""


class ParamError(SwarmShapeError):
    """Simulation parameter outside its legal range."""


class StatsError(SwarmShapeError):
    """Swarm statistics requested from an empty or invalid swarm."""


class GoalError(SwarmShapeError):
    """Covariance goal is not realizable (violates Cauchy-Schwarz or bounds)."""
