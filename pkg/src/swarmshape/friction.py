"""Wall-contact friction law and the boundary-layer flow profile.

Shared by the kinematic and disc simulators.  ``theta`` is always the
angle between the applied force and the inward wall normal, so theta=0
presses straight into the wall and |theta|=pi/2 runs parallel to it.
"""

import math
from dataclasses import dataclass

from .errors import DomainError

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class FrictionParams:
    """Coulomb wall-friction coefficient; math.inf gives the pinning model."""

    mu_f: float = math.inf

    def __post_init__(self):
        if math.isnan(self.mu_f) or self.mu_f < 0.0:
            raise DomainError(f"mu_f must be >= 0, got {self.mu_f}")

    @property
    def infinite(self) -> bool:
        return math.isinf(self.mu_f)

    @classmethod
    def frictionless(cls) -> "FrictionParams":
        return cls(0.0)


@dataclass(frozen=True)
class BoundaryLayerSpec:
    """Free-stream speed and the height over which the wall slows flow."""

    u0: float
    layer_height: float

    def __post_init__(self):
        if not (self.layer_height > 0.0):
            raise DomainError(f"layer_height must be > 0, got {self.layer_height}")


def forward_force(F, theta, params: FrictionParams) -> float:
    """Net tangential force on a wall-touching robot pushed at angle theta.

    Friction is clamped to the driving force (stiction): it can stop
    tangential motion but never reverse it.  With no normal load
    (|theta| >= pi/2) the force passes through unchanged.
    """
    if F < 0.0:
        raise DomainError(f"force magnitude must be >= 0, got {F}")
    if F == 0.0:
        return 0.0
    t = math.remainder(theta, 2.0 * math.pi)
    drive = F * math.sin(t)
    if abs(t) >= _HALF_PI:
        return drive
    normal = F * math.cos(t)
    friction = min(params.mu_f * normal, abs(drive))
    return math.copysign(abs(drive) - friction, drive) if drive else 0.0


def boundary_layer_velocity(spec: BoundaryLayerSpec, y) -> float:
    """Tangential flow speed at height y above a no-slip wall."""
    if y < 0.0:
        raise DomainError(f"wall distance must be >= 0, got {y}")
    h = spec.layer_height
    if y > h:
        return spec.u0
    return spec.u0 * (y / h) * (2.0 - y / h)
