"""Discrete unit-step simulator for many robots under one shared command.

Cells are integer (col, row) pairs in [1..width] x [1..height].  A wall
touch pins a robot against any command that is parallel to or into that
wall; only a strictly-away command frees it.  Commands are axis-aligned
integer vectors, executed one unit step at a time with robots processed
farthest-along-the-direction first, so a blocked robot blocks the chain
behind it.
"""

import numpy as np

from .errors import DomainError, StateError


class GridWorld:
    """Rectangle of unit cells with walls just outside cols/rows 1..W/H."""

    def __init__(self, width: int, height: int):
        if int(width) != width or int(height) != height:
            raise DomainError("grid dimensions must be integers")
        if width < 3 or height < 3:
            raise DomainError("grid must be at least 3x3")
        self.width = int(width)
        self.height = int(height)


class GridState:
    """Integer robot positions; index in the array is the robot's identity."""

    def __init__(self, world: GridWorld, positions):
        pos = np.asarray(positions, dtype=np.int64)
        if pos.ndim != 2 or pos.shape[1] != 2:
            raise StateError("positions must be an (n, 2) array")
        if pos.shape[0] == 0:
            raise StateError("need at least one robot")
        if (pos[:, 0] < 1).any() or (pos[:, 0] > world.width).any() \
                or (pos[:, 1] < 1).any() or (pos[:, 1] > world.height).any():
            raise StateError("robot outside the grid")
        if len({(int(x), int(y)) for x, y in pos}) != len(pos):
            raise StateError("robots must occupy distinct cells")
        self.world = world
        self.positions = pos

    def as_tuples(self):
        return [(int(x), int(y)) for x, y in self.positions]


def _pinned_mask(world, pos, dx, dy):
    """A robot moves only if the step is strictly away from every wall
    it touches; parallel or inward contact pins it."""
    x, y = pos[:, 0], pos[:, 1]
    pinned = np.zeros(len(pos), dtype=bool)
    if dx != 1:
        pinned |= (x == 1)
    if dx != -1:
        pinned |= (x == world.width)
    if dy != 1:
        pinned |= (y == 1)
    if dy != -1:
        pinned |= (y == world.height)
    return pinned


def _code(world, pos):
    return pos[:, 0] * (world.height + 2) + pos[:, 1]


def _unit_step(world, pos, dx, dy):
    pinned = _pinned_mask(world, pos, dx, dy)
    movers = ~pinned
    if not movers.any():
        return pos
    target = pos.copy()
    target[movers, 0] += dx
    target[movers, 1] += dy
    if pinned.any():
        hit = np.isin(_code(world, target[movers]),
                      _code(world, pos[pinned])).any()
    else:
        hit = False
    if not hit:
        return target
    # chain resolution: farthest along the direction moves first
    order = np.argsort(-(pos[:, 0] * dx + pos[:, 1] * dy), kind="stable")
    occupied = {tuple(p): i for i, p in enumerate(pos)}
    out = pos.copy()
    for i in order:
        if pinned[i]:
            continue
        src = (int(out[i, 0]), int(out[i, 1]))
        dst = (src[0] + dx, src[1] + dy)
        if dst in occupied:
            continue
        del occupied[src]
        occupied[dst] = i
        out[i, 0], out[i, 1] = dst
    return out


def apply_grid_command(state: GridState, dx, dy) -> GridState:
    """Axis-aligned integer command, run as |d| sequential unit steps."""
    if int(dx) != dx or int(dy) != dy:
        raise DomainError(f"grid command must be integer, got ({dx}, {dy})")
    dx, dy = int(dx), int(dy)
    if dx != 0 and dy != 0:
        raise DomainError("grid commands must be axis-aligned")
    pos = state.positions
    if dx == 0 and dy == 0:
        return state
    ux = (dx > 0) - (dx < 0)
    uy = (dy > 0) - (dy < 0)
    for _ in range(abs(dx) + abs(dy)):
        pos = _unit_step(state.world, pos, ux, uy)
    new = GridState.__new__(GridState)
    new.world = state.world
    new.positions = pos
    return new


def apply_grid_sequence(state: GridState, seq) -> list:
    """Replay a command sequence; returns the list of states, start first."""
    states = [state]
    for cmd in seq:
        states.append(apply_grid_command(states[-1], cmd.dx, cmd.dy))
    return states
