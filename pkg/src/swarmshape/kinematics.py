"""Event-driven kinematics of identically-commanded robots among walls.

Every robot receives the same displacement command; the only source of
differentiation is wall contact.  Walls have effectively infinite
friction here: a touching robot moves only when the command has a
positive component directly away from every wall it touches.
Robot-robot collisions are deliberately ignored (point-robot model);
the discrete assembly planner adds its own blocking rule.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, StateError
from .friction import FrictionParams

CONTACT_TOL = 1e-9

_WALLS = ("left", "right", "bottom", "top")


@dataclass(frozen=True)
class Workspace:
    """Rectangular arena; robot centers live in the radius-inset box."""

    width: float
    height: float
    wall_friction: FrictionParams = FrictionParams()
    robot_radius: float = 0.0

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise DomainError("workspace sides must be positive")
        if not (0.0 <= self.robot_radius < min(self.width, self.height) / 2):
            raise DomainError(f"robot_radius {self.robot_radius} too large")

    @property
    def bounds(self):
        """(lo_x, lo_y, hi_x, hi_y) for robot centers."""
        r = self.robot_radius
        return (r, r, self.width - r, self.height - r)


@dataclass(frozen=True)
class MoveCommand:
    dx: float
    dy: float
    note: str = ""

    def __post_init__(self):
        if not (math.isfinite(self.dx) and math.isfinite(self.dy)):
            raise DomainError("command components must be finite")

    @property
    def length(self) -> float:
        return math.hypot(self.dx, self.dy)


@dataclass
class MoveSequence:
    commands: list = field(default_factory=list)

    def append(self, dx, dy, note=""):
        self.commands.append(MoveCommand(float(dx), float(dy), note))

    def extend(self, other: "MoveSequence"):
        self.commands.extend(other.commands)

    @property
    def total_length(self) -> float:
        return float(sum(c.length for c in self.commands))

    def __len__(self):
        return len(self.commands)

    def __iter__(self):
        return iter(self.commands)

    def __getitem__(self, i):
        return self.commands[i]


def contact_set(ws: Workspace, p) -> frozenset:
    """Walls whose inset boundary lies within tolerance of point p."""
    lo_x, lo_y, hi_x, hi_y = ws.bounds
    out = set()
    if p[0] - lo_x <= CONTACT_TOL:
        out.add("left")
    if hi_x - p[0] <= CONTACT_TOL:
        out.add("right")
    if p[1] - lo_y <= CONTACT_TOL:
        out.add("bottom")
    if hi_y - p[1] <= CONTACT_TOL:
        out.add("top")
    return frozenset(out)


class RobotState:
    """Positions of the robot centers plus derived wall-contact flags."""

    def __init__(self, ws: Workspace, positions):
        pos = np.array(positions, dtype=float)
        pos = np.atleast_2d(pos)
        if pos.ndim != 2 or pos.shape[1] != 2 or not np.all(np.isfinite(pos)):
            raise StateError("positions must be a finite (n, 2) array")
        lo_x, lo_y, hi_x, hi_y = ws.bounds
        if (np.any(pos[:, 0] < lo_x - CONTACT_TOL)
                or np.any(pos[:, 0] > hi_x + CONTACT_TOL)
                or np.any(pos[:, 1] < lo_y - CONTACT_TOL)
                or np.any(pos[:, 1] > hi_y + CONTACT_TOL)):
            raise StateError("robot center outside the inset workspace")
        self.workspace = ws
        self.positions = pos
        self.contacts = tuple(contact_set(ws, p) for p in pos)

    @property
    def n(self) -> int:
        return self.positions.shape[0]

    def __repr__(self):
        return f"RobotState({self.n} robots)"


def _away_component(wall, dx, dy):
    if wall == "left":
        return dx
    if wall == "right":
        return -dx
    if wall == "bottom":
        return dy
    return -dy


def _advance(ws: Workspace, p, dx, dy):
    """Follow a straight segment from p, stopping exactly at the first wall."""
    lo_x, lo_y, hi_x, hi_y = ws.bounds
    t_hit, hit_walls = 1.0, ()
    for wall, delta, target in (
        ("right", dx, hi_x - p[0]), ("left", dx, lo_x - p[0]),
        ("top", dy, hi_y - p[1]), ("bottom", dy, lo_y - p[1]),
    ):
        if (wall in ("right", "top") and delta > 0) or (wall in ("left", "bottom") and delta < 0):
            t = max(target / delta, 0.0) if abs(delta) > 1e-300 else math.inf
            if t > t_hit + 1e-15:
                continue
            if t < t_hit - 1e-15:
                t_hit, hit_walls = t, (wall,)
            else:  # tie, including an exact landing at segment end
                t_hit, hit_walls = min(t_hit, t), hit_walls + (wall,)
    x, y = p[0] + t_hit * dx, p[1] + t_hit * dy
    # snap the struck coordinates exactly onto the wall
    for wall in hit_walls:
        if wall == "left":
            x = lo_x
        elif wall == "right":
            x = hi_x
        elif wall == "bottom":
            y = lo_y
        else:
            y = hi_y
    return min(max(x, lo_x), hi_x), min(max(y, lo_y), hi_y)


def apply_move(ws: Workspace, s: RobotState, m: MoveCommand) -> RobotState:
    """Advance every robot by the shared command m.

    Pinned robots (touching a wall without a strictly positive
    away-component from each touched wall) keep their exact coordinates.
    """
    if s.workspace != ws:
        raise StateError("state was built for a different workspace")
    out = s.positions.copy()
    for i in range(s.n):
        touched = s.contacts[i]
        if touched and any(_away_component(w, m.dx, m.dy) <= 0.0 for w in touched):
            continue
        out[i] = _advance(ws, s.positions[i], m.dx, m.dy)
    return RobotState(ws, out)


def apply_sequence(ws: Workspace, s: RobotState, seq) -> list:
    """Fold apply_move over a sequence; returns [s, s1, ..., sn]."""
    states = [s]
    for cmd in seq:
        states.append(apply_move(ws, states[-1], cmd))
    return states
