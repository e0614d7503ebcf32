"""Closed-loop covariance shaping for a disc swarm against walls.

The controller walks a fixed phase order: squeeze the swarm against the
left wall until var_x is well under target, re-center, squeeze against
the floor until var_y meets target, then slide along the floor at 45
degrees -- right for positive goal covariance, left for negative --
letting wall friction shear the pile until cov_xy crosses the goal,
and finally re-center.  Every transition fires exactly when its phase's
inequality first holds, so a swarm that already satisfies the goals
passes straight through, emitting only centering moves.
"""

import math
from dataclasses import dataclass, replace

from .errors import GoalError, ParamError
from .geometry import Moments
from .physics import ControlInput, DiscSwarm, SimParams, step, swarm_stats

PHASES = ("compress_x", "center_1", "compress_y", "shear", "center_2", "done")
_NEXT = dict(zip(PHASES[:-1], PHASES[1:]))


@dataclass(frozen=True)
class CovarianceGoal:
    goal_var_x: float
    goal_var_y: float
    goal_cov: float
    c1: float = 0.1  # compress_x exits when var_x < c1 * goal_var_x

    def __post_init__(self):
        if not (self.goal_var_x > 0 and self.goal_var_y > 0):
            raise GoalError("goal variances must be positive")
        bound = math.sqrt(self.goal_var_x * self.goal_var_y)
        if not (abs(self.goal_cov) <= bound):
            raise GoalError(
                f"|goal_cov| = {abs(self.goal_cov)} exceeds the "
                f"Cauchy-Schwarz bound {bound}")
        if not (0.0 < self.c1 < 1.0):
            raise GoalError(f"c1 must lie in (0, 1), got {self.c1}")
        for v in (self.goal_var_x, self.goal_var_y, self.goal_cov):
            if not math.isfinite(v):
                raise GoalError("goal moments must be finite")


@dataclass(frozen=True)
class ControllerState:
    """Phase machine state plus the knobs the phases share.

    shear_sign is 0 outside the shear phase and +-1 while inside, fixed
    from the goal covariance sign the moment the phase is entered.
    """

    phase: str = "compress_x"
    elapsed: float = 0.0
    shear_sign: int = 0
    center: tuple = (50.0, 50.0)
    radius: float = 1.0
    force: float = 2.0
    step_duration: float = 0.25

    def __post_init__(self):
        if self.phase not in PHASES:
            raise ParamError(f"unknown phase {self.phase!r}")
        if not (self.force > 0 and self.step_duration > 0 and self.radius > 0):
            raise ParamError("force, step_duration and radius must be positive")


def _exit_holds(phase, m: Moments, goal: CovarianceGoal, cs, sign) -> bool:
    if phase == "compress_x":
        return m.var_x < goal.c1 * goal.goal_var_x
    if phase in ("center_1", "center_2"):
        dist = math.hypot(m.mean_x - cs.center[0], m.mean_y - cs.center[1])
        return dist <= 0.5 * cs.radius
    if phase == "compress_y":
        return m.var_y <= goal.goal_var_y
    if phase == "shear":
        if sign > 0:
            return m.cov_xy >= goal.goal_cov
        return m.cov_xy <= goal.goal_cov
    return False  # done never exits


def controller_step(m: Moments, goal: CovarianceGoal,
                    cs: ControllerState) -> tuple:
    """One controller decision: advance past any phase whose exit
    inequality already holds, then emit that phase's command."""
    phase = cs.phase
    sign = cs.shear_sign
    changed = False
    while phase != "done":
        if phase == "shear" and sign == 0:
            sign = 1 if goal.goal_cov > 0 else -1
        if not _exit_holds(phase, m, goal, cs, sign):
            break
        if phase == "shear":
            sign = 0
        phase = _NEXT[phase]
        changed = True

    T = cs.step_duration
    F = cs.force
    if phase == "compress_x":
        u = ControlInput(F, math.pi, T)
    elif phase == "compress_y":
        u = ControlInput(F, -math.pi / 2, T)
    elif phase == "shear":
        u = ControlInput(F, -math.pi / 4 if sign > 0 else -3 * math.pi / 4, T)
    elif phase == "done":
        u = ControlInput(0.0, 0.0, T)
    else:  # centering
        u = ControlInput(F, math.atan2(cs.center[1] - m.mean_y,
                                       cs.center[0] - m.mean_x), T)
    new = replace(cs, phase=phase, shear_sign=sign,
                  elapsed=(0.0 if changed else cs.elapsed) + T)
    return u, new


def phase_path(frm: str, to: str):
    """Consecutive phase hops between two controller states."""
    i, j = PHASES.index(frm), PHASES.index(to)
    return [(PHASES[k], PHASES[k + 1]) for k in range(i, j)]


@dataclass(frozen=True)
class PhaseTransition:
    t: float
    frm: str
    to: str
    stats: Moments


@dataclass(frozen=True)
class EpochReport:
    start: float
    end: float
    goal: CovarianceGoal
    band: float
    reached: bool
    reached_at: float = None


@dataclass
class ClosedLoopResult:
    series: list        # (t, phase, Moments, CovarianceGoal) per control step
    transitions: list   # PhaseTransition, one per individual hop
    epochs: list        # EpochReport, one per schedule entry
    final: DiscSwarm = None


def goal_band(goal_cov: float, floor: float = 50.0) -> float:
    """Half-width of the 'reached' band: 10% of the goal or the floor,
    whichever is larger."""
    return max(0.1 * abs(goal_cov), floor)


def run_closed_loop(initial: DiscSwarm, schedule, params: SimParams,
                    duration: float, control: ControllerState = None,
                    band_floor: float = 50.0) -> ClosedLoopResult:
    """Simulate the controller against a goal schedule.

    schedule is a list of (start_time, CovarianceGoal) with strictly
    increasing times starting at 0; each entry opens an epoch that runs
    until the next entry (or until duration).  A goal change resets the
    controller to compress_x.  Epoch reports use the goal_band rule with
    the given floor.
    """
    if not schedule:
        raise ParamError("schedule must contain at least one goal")
    times = [t for t, _ in schedule]
    if times[0] != 0.0:
        raise ParamError("schedule must start at time 0")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ParamError("schedule times must be strictly increasing")
    if not (duration > times[-1]):
        raise ParamError("duration must extend past the last epoch start")
    for _, g in schedule:
        if not isinstance(g, CovarianceGoal):
            raise ParamError("schedule entries must carry a CovarianceGoal")

    ws = initial.workspace
    cs = control or ControllerState(center=(ws.width / 2, ws.height / 2),
                                    radius=initial.radius)
    n_sub = max(1, int(round(cs.step_duration / params.dt)))
    swarm = initial
    series = []
    transitions = []
    t = 0.0
    gi = 0
    while t < duration - 1e-9:
        if gi + 1 < len(schedule) and t >= schedule[gi + 1][0] - 1e-9:
            gi += 1
            cs = replace(cs, phase="compress_x", elapsed=0.0, shear_sign=0)
        goal = schedule[gi][1]
        m = swarm_stats(swarm)
        u, cs2 = controller_step(m, goal, cs)
        if cs2.phase != cs.phase:
            for frm, to in phase_path(cs.phase, cs2.phase):
                transitions.append(PhaseTransition(t, frm, to, m))
        series.append((t, cs2.phase, m, goal))
        for _ in range(n_sub):
            swarm = step(swarm, u, params)
        cs = cs2
        t += cs.step_duration
    series.append((t, cs.phase, swarm_stats(swarm), schedule[gi][1]))

    epochs = []
    bounds = times + [duration]
    for k, (t0, goal) in enumerate(schedule):
        t1 = bounds[k + 1]
        band = goal_band(goal.goal_cov, band_floor)
        hit = next((tt for tt, _, mm, _ in series
                    if t0 - 1e-9 <= tt < t1 - 1e-9
                    and abs(mm.cov_xy - goal.goal_cov) <= band), None)
        epochs.append(EpochReport(t0, t1, goal, band, hit is not None, hit))
    return ClosedLoopResult(series, transitions, epochs, swarm)
