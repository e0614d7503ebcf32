"""Many-robot shape assembly on the discrete grid.

One shared command stream moves every robot at once, so the plan works
by parking the swarm as a single staging row near the floor, then
peeling robots off one at a time: mount the rightmost on the right
wall, walk it down to the floor and across to the left wall, climb to
the goal row, and press the whole world left so only the wall-pinned
robot keeps its column, then ride everyone back right.  Placed robots
shuttle around during each delivery but return to their goals exactly;
goals are required in right-to-left, top-to-bottom order so presses
never clip a placed robot off its column.
"""

import math
from dataclasses import dataclass

from .errors import ZoneError
from .gridsim import GridState, GridWorld, apply_grid_command, apply_grid_sequence
from .kinematics import MoveSequence


def sort_goals(goals):
    """Canonical goal order: right-to-left, ties top-to-bottom."""
    return tuple(sorted((tuple(int(c) for c in g) for g in goals),
                        key=lambda g: (-g[0], -g[1])))


def _as_cell(p, what):
    try:
        x, y = p
    except (TypeError, ValueError):
        raise ZoneError(f"{what} must be a (col, row) pair") from None
    if int(x) != x or int(y) != y:
        raise ZoneError(f"{what} must have integer cells, got {p}")
    return int(x), int(y)


@dataclass(frozen=True)
class Zones:
    """Workspace layout for an assembly task.

    The build rectangle holds the goal cells; the staging rectangle
    holds the starting block, packed left-to-right top-to-bottom with
    only the top row allowed to be partial.  All margins are expressed
    in multiples of the clearance so transient wiggles stay inside
    their own bands.
    """

    width: int
    height: int
    clearance: int
    build_origin: tuple
    build_w: int
    build_h: int
    staging_origin: tuple
    staging_w: int
    staging_h: int
    goals: tuple
    starts: tuple
    robot_radius: float = 0.5

    def __post_init__(self):
        for name in ("width", "height", "clearance", "build_w", "build_h",
                     "staging_w", "staging_h"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ZoneError(f"{name} must be a positive integer, got {v}")
            object.__setattr__(self, name, int(v))
        object.__setattr__(self, "build_origin",
                           _as_cell(self.build_origin, "build_origin"))
        object.__setattr__(self, "staging_origin",
                           _as_cell(self.staging_origin, "staging_origin"))
        object.__setattr__(self, "goals", tuple(
            _as_cell(g, "goal") for g in self.goals))
        object.__setattr__(self, "starts", tuple(
            _as_cell(p, "start") for p in self.starts))
        if self.robot_radius != 0.5:
            raise ZoneError("grid model fixes the robot radius at half a cell")
        self._check_geometry()
        self._check_goals()
        self._check_starts()

    # -- derived corners ---------------------------------------------------
    @property
    def build_x1(self):
        return self.build_origin[0] + self.build_w - 1

    @property
    def build_y1(self):
        return self.build_origin[1] + self.build_h - 1

    @property
    def n(self):
        return len(self.goals)

    @property
    def park_row(self):
        return self.clearance + 2

    def park_cols(self):
        # head robot parks two cells off the right wall
        return [self.width - 2 - i for i in range(self.n)]

    def _check_geometry(self):
        eps, n = self.clearance, len(self.goals)
        if n == 0:
            raise ZoneError("need at least one goal")
        if len(self.starts) != n:
            raise ZoneError("starts and goals must have the same count")
        bx0, by0 = self.build_origin
        if bx0 < eps + 3:
            raise ZoneError(f"build zone must start at col >= {eps + 3}")
        if self.build_x1 > self.width - n - 2:
            raise ZoneError("build zone too far right for the staging queue; "
                            f"need col <= {self.width - n - 2}")
        if by0 < 3 * eps + 3:
            raise ZoneError(f"build zone must start at row >= {3 * eps + 3}")
        if self.build_y1 > self.height - eps - 1:
            raise ZoneError(f"build zone must end at row <= {self.height - eps - 1}")
        c0, r0 = self.staging_origin
        if r0 < eps + 1:
            raise ZoneError(f"staging must start at row >= {eps + 1}")
        if c0 < eps + 2:
            raise ZoneError(f"staging must start at col >= {eps + 2}")
        if c0 + self.staging_h * self.staging_w > self.width:
            raise ZoneError("not enough room to flatten the staging block")
        if r0 + self.staging_h > by0:
            raise ZoneError("staging block must sit strictly below the build zone")

    def _check_goals(self):
        if len(set(self.goals)) != len(self.goals):
            raise ZoneError("goals must be distinct")
        bx0, by0 = self.build_origin
        for g in self.goals:
            if not (bx0 <= g[0] <= self.build_x1 and by0 <= g[1] <= self.build_y1):
                raise ZoneError(f"goal {g} outside the build zone")
        if self.goals != sort_goals(self.goals):
            raise ZoneError("goals must be listed right-to-left, top-to-bottom")

    def _check_starts(self):
        if self.starts != self.packed_starts(self.staging_origin, self.staging_w,
                                             self.staging_h, len(self.goals)):
            raise ZoneError("starts must fill the staging block left-to-right, "
                            "top-to-bottom, partial row on top")

    @staticmethod
    def packed_starts(origin, w, h, n):
        """Block of n cells: full rows of w, a left-aligned partial row on
        top, labeled left-to-right then top-to-bottom."""
        c0, r0 = origin
        if not (h >= 1 and (h - 1) * w < n <= h * w):
            raise ZoneError(f"{n} robots do not pack a {w}x{h} staging block")
        p = n - (h - 1) * w
        cells = [(c0 + i, r0 + h - 1) for i in range(p)]
        for j in range(h - 2, -1, -1):
            cells.extend((c0 + i, r0 + j) for i in range(w))
        return tuple(cells)

    @classmethod
    def for_goals(cls, goals, clearance=1, staging_w=None):
        """Build a minimal valid layout around an already-sorted goal list."""
        goals = tuple(_as_cell(g, "goal") for g in goals)
        n = len(goals)
        if n == 0:
            raise ZoneError("need at least one goal")
        eps = int(clearance)
        xs = [g[0] for g in goals]
        ys = [g[1] for g in goals]
        bx0, bx1 = min(xs), max(xs)
        by0, by1 = min(ys), max(ys)
        if staging_w is None:
            staging_w = max(1, math.isqrt(n))
        staging_h = -(-n // staging_w)
        c0, r0 = eps + 2, eps + 1
        width = max(bx1 + n + 2, c0 + staging_w * staging_h)
        height = by1 + eps + 1
        starts = cls.packed_starts((c0, r0), staging_w, staging_h, n)
        return cls(width, height, eps, (bx0, by0), bx1 - bx0 + 1,
                   by1 - by0 + 1, (c0, r0), staging_w, staging_h,
                   goals, starts)


def delivery_order(zones: Zones):
    """Start indices in the order the queue delivers them (head first):
    right-to-left within each row, top row first."""
    n, w, h = zones.n, zones.staging_w, zones.staging_h
    p = n - (h - 1) * w
    order = list(range(p - 1, -1, -1))
    for j in range(h - 1):
        base = p + j * w
        order.extend(range(base + w - 1, base - 1, -1))
    return order


class _Plan:
    """Emit commands while replaying them, so every stage reads true state."""

    def __init__(self, zones):
        self.zones = zones
        self.world = GridWorld(zones.width, zones.height)
        self.state = GridState(self.world, zones.starts)
        self.seq = MoveSequence()

    def emit(self, dx, dy, note):
        if dx == 0 and dy == 0:
            return
        self.seq.append(float(dx), float(dy), note)
        self.state = apply_grid_command(self.state, dx, dy)

    def at(self, robot):
        x, y = self.state.positions[robot]
        return int(x), int(y)


def arrange_n_robots(zones: Zones) -> MoveSequence:
    """Plan the full assembly; the returned sequence replays in the grid
    simulator with robot ``order[k]`` finishing on ``goals[k]``."""
    z = zones
    eps = z.clearance
    W = z.width
    R0 = z.park_row
    order = delivery_order(z)
    plan = _Plan(z)
    c0, r0 = z.staging_origin

    # flatten the staging block into one row on the floor, then park it
    plan.emit(0, -(r0 - 1), "stage: drop block to floor")
    for _ in range(z.staging_h - 1):
        plan.emit(z.staging_w, 0, "stage: shear upper rows right")
        plan.emit(0, -1, "stage: drop a row")
    plan.emit(0, R0 - 1, "stage: lift the row")
    head_col = c0 + z.n - 1
    plan.emit((W - 2) - head_col, 0, "stage: park at the right")
    park = z.park_cols()
    for i, r in enumerate(order):
        assert plan.at(r) == (park[i], R0), "parking arithmetic broke"

    for k, (robot, goal) in enumerate(zip(order, z.goals), start=1):
        fx, fy = goal
        ride = fx - 1
        tag = f"deliver {k}"
        # mount the head on the right wall
        plan.emit(k + 1, 0, f"{tag}: mount right wall")
        assert plan.at(robot) == (W, R0)
        # one detach-descend-reattach cycle brings only the head down
        plan.emit(-1, 0, f"{tag}: wall descent")
        plan.emit(0, -eps, f"{tag}: wall descent")
        plan.emit(1, 0, f"{tag}: wall descent")
        plan.emit(0, eps, f"{tag}: wall descent")
        assert plan.at(robot) == (W, 2)
        plan.emit(-1, 0, f"{tag}: step off the wall")
        plan.emit(0, -1, f"{tag}: touch the floor")
        plan.emit(1, 0, f"{tag}: restore others")
        assert plan.at(robot) == (W - 1, 1)
        # crawl the floor to the far left, clearance-bounded strokes
        remaining = W - 3
        while remaining:
            b = min(eps, remaining)
            plan.emit(0, 1, f"{tag}: floor drift")
            plan.emit(-b, 0, f"{tag}: floor drift")
            plan.emit(0, -1, f"{tag}: floor drift")
            plan.emit(b, 0, f"{tag}: floor drift")
            remaining -= b
        assert plan.at(robot) == (2, 1)
        plan.emit(0, 1, f"{tag}: lift off the floor")
        plan.emit(-1, 0, f"{tag}: onto the left wall")
        assert plan.at(robot) == (1, 2)
        # climb the left wall to the goal row
        remaining = fy - 2
        while remaining:
            b = min(eps, remaining)
            plan.emit(1, 0, f"{tag}: wall ascent")
            plan.emit(0, b, f"{tag}: wall ascent")
            plan.emit(-1, 0, f"{tag}: wall ascent")
            plan.emit(0, -b, f"{tag}: wall ascent")
            remaining -= b
        assert plan.at(robot) == (1, fy)
        # press left so only the pinned robot keeps its column, ride back
        plan.emit(-(ride + k), 0, f"{tag}: press against the wall")
        plan.emit(ride, 0, f"{tag}: ride into place")
        assert plan.at(robot) == (fx, fy)
        # loop invariant: placed robots restored, queue parked untouched
        for j in range(k):
            assert plan.at(order[j]) == z.goals[j], "a placed robot moved"
        for i in range(k, z.n):
            assert plan.at(order[i]) == (park[i], R0), "queue disturbed"

    return plan.seq


def grid_replay(zones: Zones, seq) -> list:
    """Replay a plan from the starting block; returns all states."""
    world = GridWorld(zones.width, zones.height)
    return apply_grid_sequence(GridState(world, zones.starts), seq)


def verify_assembly(zones: Zones, seq) -> bool:
    """True when an independent replay puts delivery k's robot on goal k."""
    final = grid_replay(zones, seq)[-1]
    order = delivery_order(zones)
    pos = final.as_tuples()
    return all(pos[order[k]] == zones.goals[k] for k in range(zones.n))
