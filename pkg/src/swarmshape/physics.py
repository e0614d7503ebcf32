"""Overdamped disc-swarm simulator with finite wall friction.

Every disc receives the same drive force; discs repel on overlap with a
linear penalty, and a disc touching a wall loses its inward force
component to the wall while friction eats into its tangential one, the
same reduction as forward_force.  Velocity equals mobility times the
net force (first-order dynamics), integrated at a fixed timestep.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ParamError, StateError, StatsError
from .geometry import Moments, moments_of_points
from .kinematics import Workspace

_WALL_TOL = 1e-9


@dataclass(frozen=True)
class SimParams:
    dt: float = 1.0 / 240.0
    mobility: float = 1.0
    mu_f: float = 0.0
    stiffness: float = 300.0
    seed: int = 0

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ParamError(f"dt must be positive, got {self.dt}")
        if not (self.mobility > 0 and math.isfinite(self.mobility)):
            raise ParamError(f"mobility must be positive, got {self.mobility}")
        if not (self.mu_f >= 0):
            raise ParamError(f"mu_f must be non-negative, got {self.mu_f}")
        if not (self.stiffness > 0):
            raise ParamError(f"stiffness must be positive, got {self.stiffness}")


@dataclass(frozen=True)
class ControlInput:
    force: float
    angle: float
    duration: float

    def __post_init__(self):
        if not (self.force >= 0 and math.isfinite(self.force)):
            raise ParamError(f"force must be >= 0, got {self.force}")
        if not (self.duration > 0 and math.isfinite(self.duration)):
            raise ParamError(f"duration must be positive, got {self.duration}")
        if not math.isfinite(self.angle):
            raise ParamError("angle must be finite")


class DiscSwarm:
    """Uniform discs in a rectangular workspace."""

    def __init__(self, workspace: Workspace, radius: float, positions):
        if not (radius > 0):
            raise StateError(f"radius must be positive, got {radius}")
        pos = np.array(positions, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 2 or pos.shape[0] == 0:
            raise StateError("positions must be a non-empty (n, 2) array")
        if not np.isfinite(pos).all():
            raise StateError("positions must be finite")
        lo_x, lo_y = radius, radius
        hi_x, hi_y = workspace.width - radius, workspace.height - radius
        if (pos[:, 0] < lo_x - 1e-9).any() or (pos[:, 0] > hi_x + 1e-9).any() \
                or (pos[:, 1] < lo_y - 1e-9).any() or (pos[:, 1] > hi_y + 1e-9).any():
            raise StateError("disc outside the workspace inset by its radius")
        self.workspace = workspace
        self.radius = float(radius)
        self.positions = pos

    @property
    def n(self):
        return len(self.positions)

    def _with_positions(self, pos):
        out = DiscSwarm.__new__(DiscSwarm)
        out.workspace = self.workspace
        out.radius = self.radius
        out.positions = pos
        return out


def _contact_forces(pos, radius, stiffness):
    """Linear penalty along center lines; neighbors found by hashing
    into a uniform grid with cell size one disc diameter."""
    n = len(pos)
    cell = 2.0 * radius
    keys = np.floor(pos / cell).astype(np.int64)
    bins = {}
    for idx in range(n):
        bins.setdefault((int(keys[idx, 0]), int(keys[idx, 1])), []).append(idx)
    ii, jj = [], []
    for (bx, by), members in bins.items():
        for nx in (bx - 1, bx, bx + 1):
            for ny in (by - 1, by, by + 1):
                if (nx, ny) < (bx, by):
                    continue
                if (nx, ny) == (bx, by):
                    for a in range(len(members)):
                        for b in range(a + 1, len(members)):
                            ii.append(members[a])
                            jj.append(members[b])
                else:
                    other = bins.get((nx, ny))
                    if other:
                        for a in members:
                            for b in other:
                                ii.append(a)
                                jj.append(b)
    forces = np.zeros_like(pos)
    if not ii:
        return forces
    i = np.asarray(ii)
    j = np.asarray(jj)
    d = pos[j] - pos[i]
    dist = np.hypot(d[:, 0], d[:, 1])
    overlap = 2.0 * radius - dist
    hit = overlap > 0
    if not hit.any():
        return forces
    i, j, d, dist, overlap = i[hit], j[hit], d[hit], dist[hit], overlap[hit]
    dist = np.maximum(dist, 1e-12)  # coincident centers: arbitrary fixed axis
    f = (stiffness * overlap / dist)[:, None] * d
    np.add.at(forces, i, -f)
    np.add.at(forces, j, f)
    return forces


def step(swarm: DiscSwarm, u: ControlInput, params: SimParams) -> DiscSwarm:
    """One dt of overdamped motion under the shared drive plus contacts."""
    pos = swarm.positions
    r = swarm.radius
    lo_x = lo_y = r
    hi_x, hi_y = swarm.workspace.width - r, swarm.workspace.height - r
    f = _contact_forces(pos, r, params.stiffness)
    f[:, 0] += u.force * math.cos(u.angle)
    f[:, 1] += u.force * math.sin(u.angle)
    # wall support and friction: normal loads taken from the raw force so
    # corner contacts see both reductions consistently
    touch = [
        (pos[:, 0] <= lo_x + _WALL_TOL, 0, 1.0),
        (pos[:, 0] >= hi_x - _WALL_TOL, 0, -1.0),
        (pos[:, 1] <= lo_y + _WALL_TOL, 1, 1.0),
        (pos[:, 1] >= hi_y - _WALL_TOL, 1, -1.0),
    ]
    loads = []
    for mask, axis, inward in touch:
        pressing = mask & (f[:, axis] * inward < 0)
        loads.append((pressing, axis, np.abs(f[:, axis]) * pressing))
    for pressing, axis, load in loads:
        tang = 1 - axis
        cut = params.mu_f * load[pressing]
        t = f[pressing, tang]
        f[pressing, tang] = np.sign(t) * np.maximum(np.abs(t) - cut, 0.0)
    for pressing, axis, _ in loads:
        f[pressing, axis] = 0.0
    new = pos + params.dt * params.mobility * f
    new[:, 0] = np.clip(new[:, 0], lo_x, hi_x)
    new[:, 1] = np.clip(new[:, 1], lo_y, hi_y)
    return swarm._with_positions(new)


def swarm_stats(swarm: DiscSwarm) -> Moments:
    """Population moments of the disc centers."""
    if swarm.n < 2:
        raise StatsError("need at least two discs for statistics")
    return moments_of_points(swarm.positions)


def hex_packed_swarm(workspace: Workspace, radius: float, n: int,
                     seed: int = 0, spacing: float = 2.04,
                     jitter: float = 0.01, center=None) -> DiscSwarm:
    """Roughly round blob of n discs on a jittered hex lattice.

    spacing and jitter are in units of the radius; the same seed gives
    the same swarm, which is how sweeps share initial conditions.  The
    blob sits at the workspace center unless ``center`` says otherwise.
    """
    if n < 1:
        raise ParamError("need at least one disc")
    dx = spacing * radius
    dy = dx * math.sqrt(3) / 2
    if center is None:
        cx, cy = workspace.width / 2, workspace.height / 2
    else:
        cx, cy = float(center[0]), float(center[1])
    side = int(math.ceil(math.sqrt(n))) + 2
    sites = []
    for row in range(-side, side + 1):
        off = 0.5 * dx if row % 2 else 0.0
        for col in range(-side, side + 1):
            sites.append((cx + col * dx + off, cy + row * dy))
    sites.sort(key=lambda p: ((p[0] - cx) ** 2 + (p[1] - cy) ** 2, p[1], p[0]))
    pts = np.array(sites[:n])
    rng = np.random.Generator(np.random.Philox(seed))
    pts += rng.uniform(-jitter * radius, jitter * radius, size=pts.shape)
    return DiscSwarm(workspace, radius, pts)


def run_program(swarm: DiscSwarm, program, params: SimParams,
                sample_every: int = 8):
    """Apply a list of ControlInputs in order; returns (trace, final swarm)
    with trace entries (t, Moments) sampled every few steps plus the end."""
    trace = [(0.0, swarm_stats(swarm))]
    t = 0.0
    k = 0
    for u in program:
        steps = max(1, int(round(u.duration / params.dt)))
        for _ in range(steps):
            swarm = step(swarm, u, params)
            t += params.dt
            k += 1
            if k % sample_every == 0:
                trace.append((t, swarm_stats(swarm)))
    if k % sample_every:
        trace.append((t, swarm_stats(swarm)))
    return trace, swarm


def friction_sweep_levels():
    """mu_f levels whose wall friction saturates at {0, 1/3, 2/3, 1} of
    the drive force for a 45-degree push into a wall."""
    s = math.sqrt(2.0)
    return (0.0, s / 3.0, 2.0 * s / 3.0, s)


def run_open_loop(initial: DiscSwarm, program, params: SimParams,
                  friction_levels=None, sample_every: int = 8):
    """Re-run the same program from the same swarm at each friction level."""
    if friction_levels is None:
        friction_levels = friction_sweep_levels()
    out = {}
    for mu in friction_levels:
        p = replace(params, mu_f=float(mu))
        trace, _ = run_program(initial, program, p, sample_every)
        out[float(mu)] = trace
    return out


def covariance_excursion(trace) -> float:
    """max - min of cov_xy over a (t, Moments) trace."""
    covs = [m.cov_xy for _, m in trace]
    return max(covs) - min(covs)
