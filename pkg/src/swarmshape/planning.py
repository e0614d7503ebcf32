"""Exact two-robot positioning with walls, plus the drift-move primitive.

Both robots always receive the same command; the planner engineers
asymmetry by parking one robot against a wall (infinite friction pins
it against parallel commands) and sliding the other.  An x-spacing pass
pins via the bottom wall and corrects the horizontal gap; a y-spacing
pass is the same machinery transposed onto the left wall.  Every pass
conserves the other axis' gap at every intermediate state.

Plans are verified by replay before being returned, and serialized to
a line-oriented ``dx dy`` text format with ``#`` annotations.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, TaskError
from .kinematics import (
    CONTACT_TOL, MoveCommand, MoveSequence, RobotState, Workspace,
    apply_move,
)

_GAP_TOL_FRAC = 1e-7   # below this gap a wall cannot separate the pair
_DONE_TOL = 1e-11
_MAX_ROUNDS = 64


@dataclass(frozen=True)
class TwoRobotTask:
    """Start and goal points for two robots in an L x L workspace."""

    s1: tuple
    s2: tuple
    e1: tuple
    e2: tuple
    L: float

    def __post_init__(self):
        if not (self.L > 0 and math.isfinite(self.L)):
            raise TaskError(f"invalid wall length {self.L}")
        margin = 1e-6 * self.L
        for name in ("s1", "s2", "e1", "e2"):
            p = getattr(self, name)
            if len(p) != 2 or not all(math.isfinite(c) for c in p):
                raise TaskError(f"{name} must be a finite 2D point")
            if not all(margin <= c <= self.L - margin for c in p):
                raise TaskError(f"{name}={tuple(p)} not strictly inside [0,{self.L}]^2")
        gap = _GAP_TOL_FRAC * self.L
        if max(abs(self.s1[0] - self.s2[0]), abs(self.s1[1] - self.s2[1])) <= gap:
            raise TaskError("starts too close to differentiate")
        if max(abs(self.e1[0] - self.e2[0]), abs(self.e1[1] - self.e2[1])) <= gap:
            raise TaskError("goals too close to differentiate")

    @property
    def workspace(self) -> Workspace:
        return Workspace(self.L, self.L)

    def start_state(self) -> RobotState:
        return RobotState(self.workspace, [self.s1, self.s2])


def _q(v) -> float:
    # Quantize command components so text serialization round-trips exactly.
    return round(float(v), 12)


def _uv(pos, axis):
    # u = coordinate being corrected, v = coordinate carrying the wall pin.
    return (pos[0], pos[1]) if axis == "x" else (pos[1], pos[0])


def _cmd(axis, du, dv, note=""):
    du, dv = _q(du), _q(dv)
    return MoveCommand(du, dv, note) if axis == "x" else MoveCommand(dv, du, note)


def _emit(ws, state, seq, cmd):
    seq.commands.append(cmd)
    return apply_move(ws, state, cmd)


def _axis_pass(ws, state, axis, target, seq):
    """Drive u1 - u2 to ``target`` while conserving v1 - v2 throughout.

    Main mechanism: drop the lower-v robot onto the v-floor wall
    (bottom for x passes, left for y passes), slide the free robot
    horizontally in u, hop off.  One round suffices unless start
    spread + correction exceed the wall length; two always do when the
    correction is at most L.
    """
    L = ws.width
    tau = _GAP_TOL_FRAC * L
    eps = 1e-3 * L
    lo, hi = 0.0, L  # radius-0 inset equals the workspace

    for rnd in range(1, _MAX_ROUNDS + 1):
        p1, p2 = state.positions
        u1, v1 = _uv(p1, axis)
        u2, v2 = _uv(p2, axis)
        if abs((u1 - u2) - target) <= _DONE_TOL * max(1.0, L):
            return state, rnd - 1
        if abs(v1 - v2) <= tau:
            state = _side_pass(ws, state, axis, target, seq, lo, hi, tau, eps)
            return state, rnd
        # pin the robot nearer the v-floor; the other one stays free
        pin, free = (0, 1) if v1 < v2 else (1, 0)
        u_pin, u_free = (u1, u2) if pin == 0 else (u2, u1)
        v_pin, v_free = (v1, v2) if pin == 0 else (v2, v1)
        g = target if free == 0 else -target  # wanted u_free - u_pin
        s0 = u_free - u_pin
        delta = min(eps, (L - abs(s0)) / 4, (L - abs(g)) / 4)
        if delta <= CONTACT_TOL:
            raise TaskError("gap too close to the wall length to maneuver")
        w_lo, w_hi = lo + delta, hi - delta
        # mount shift keeping the pair inside the margin window
        m_lo = w_lo - min(u_pin, u_free)
        m_hi = w_hi - max(u_pin, u_free)
        # full correction also needs the free robot's landing in-window
        t_lo, t_hi = w_lo - u_pin - g, w_hi - u_pin - g
        a, b = max(m_lo, t_lo), min(m_hi, t_hi)
        if a <= b:
            m_u = (a + b) / 2
        elif g > s0:  # must travel +u: start from the far low edge
            m_u = m_lo
        else:
            m_u = m_hi
        state = _emit(ws, state, seq, _cmd(
            axis, m_u, lo - v_pin, f"{axis} round {rnd}: mount"))
        p_pin, p_free = state.positions[pin], state.positions[free]
        u_pin_now, _ = _uv(p_pin, axis)
        u_free_now, v_free_now = _uv(p_free, axis)
        want = min(max(u_pin_now + g, w_lo), w_hi)
        state = _emit(ws, state, seq, _cmd(
            axis, want - u_free_now, 0.0, f"{axis} round {rnd}: shift"))
        hop = min(eps, (hi - v_free_now) / 2)
        state = _emit(ws, state, seq, _cmd(
            axis, 0.0, hop, f"{axis} round {rnd}: detach"))
    raise TaskError("spacing pass failed to converge")


def _side_pass(ws, state, axis, target, seq, lo, hi, tau, eps):
    """Fallback for a pair with (near-)equal v: pin via the u-floor wall.

    Only shrinking corrections that keep the u-order are possible in
    this configuration; anything else needs a v-gap first, which
    arrange_two_robots provides by reordering passes.
    """
    p1, p2 = state.positions
    u1, v1 = _uv(p1, axis)
    u2, v2 = _uv(p2, axis)
    d0 = u1 - u2
    if abs(target) <= tau and abs(d0) <= tau:
        raise TaskError("robots would coincide; needs a cross-axis gap first")
    if target * d0 < 0 and abs(target) > tau:
        raise TaskError("cannot flip u-order of same-height robots")
    if abs(target) > abs(d0) + _DONE_TOL:
        raise TaskError("cannot grow the gap of same-height robots")
    pin, free = (0, 1) if u1 < u2 else (1, 0)
    u_pin = min(u1, u2)
    state = _emit(ws, state, seq, _cmd(
        axis, lo - u_pin, 0.0, f"{axis} side: mount"))
    u_pin_now, _ = _uv(state.positions[pin], axis)
    u_free_now, _ = _uv(state.positions[free], axis)
    g = target if free == 0 else -target
    state = _emit(ws, state, seq, _cmd(
        axis, (u_pin_now + abs(g)) - u_free_now, 0.0, f"{axis} side: shift"))
    u_free_now, _ = _uv(state.positions[free], axis)
    hop = min(eps, (hi - u_free_now) / 2)
    state = _emit(ws, state, seq, _cmd(axis, hop, 0.0, f"{axis} side: detach"))
    return state


def _verify(state, e1, e2, tol=1e-9):
    p1, p2 = state.positions
    return (abs(p1[0] - e1[0]) <= tol and abs(p1[1] - e1[1]) <= tol
            and abs(p2[0] - e2[0]) <= tol and abs(p2[1] - e2[1]) <= tol)


def x_spacing(task: TwoRobotTask):
    """Set the horizontal gap to the goals' while conserving the vertical."""
    ws = task.workspace
    state = task.start_state()
    seq = MoveSequence()
    state, _ = _axis_pass(ws, state, "x", task.e1[0] - task.e2[0], seq)
    return seq, state


def y_spacing(task: TwoRobotTask):
    """Set the vertical gap, then translate robot 1 (hence both) to the goals.

    Assumes the horizontal gap already matches the goals'.
    """
    gx = task.e1[0] - task.e2[0]
    if abs((task.s1[0] - task.s2[0]) - gx) > 1e-9:
        raise TaskError("y_spacing requires the x gap to be in place")
    ws = task.workspace
    state = task.start_state()
    seq = MoveSequence()
    state, _ = _axis_pass(ws, state, "y", task.e1[1] - task.e2[1], seq)
    state = _translate_to_goal(ws, state, task.e1, seq)
    if not _verify(state, task.e1, task.e2):
        raise TaskError("replay verification failed after y spacing")
    return seq, state


def _translate_to_goal(ws, state, e1, seq):
    dx = e1[0] - state.positions[0][0]
    dy = e1[1] - state.positions[0][1]
    if abs(dx) > 0 or abs(dy) > 0:
        state = _emit(ws, state, seq, MoveCommand(_q(dx), _q(dy), "translate to goals"))
    return state


def arrange_two_robots(task: TwoRobotTask) -> MoveSequence:
    """Full positioning plan: spacing passes plus the final translation.

    The usual order is x then y.  Degenerate geometries (a gap the next
    pass would need sitting at ~zero) get extra or reordered passes so
    each pass always has a cross-axis gap to pin with.
    """
    tau = _GAP_TOL_FRAC * task.L
    d0 = task.s1[0] - task.s2[0]
    h0 = task.s1[1] - task.s2[1]
    gx = task.e1[0] - task.e2[0]
    gy = task.e1[1] - task.e2[1]

    if abs(h0) > tau:
        if abs(gx) > tau:
            passes = [("x", gx), ("y", gy)]
        elif abs(d0) > tau:
            passes = [("y", gy), ("x", gx)]
        else:
            passes = [("x", task.L / 2), ("y", gy), ("x", gx)]
    else:  # same-height starts imply a usable horizontal gap
        if abs(gx) > tau:
            passes = [("y", task.L / 2), ("x", gx), ("y", gy)]
        else:
            passes = [("y", gy), ("x", gx)]

    ws = task.workspace
    state = task.start_state()
    seq = MoveSequence()
    for axis, target in passes:
        state, _ = _axis_pass(ws, state, axis, target, seq)
    state = _translate_to_goal(ws, state, task.e1, seq)
    if not _verify(state, task.e1, task.e2):
        raise TaskError("replay verification failed")
    return seq


def spacing_rounds(seq: MoveSequence, axis: str) -> int:
    """Highest round number the pass annotations record for an axis."""
    best = 0
    for c in seq:
        parts = c.note.split()
        if len(parts) >= 3 and parts[0] == axis and parts[1] == "round":
            best = max(best, int(parts[2].rstrip(":")))
    return best


# ---------------------------------------------------------------------------
# drift moves

_AWAY = {"top": (0, -1), "bottom": (0, 1), "left": (1, 0), "right": (-1, 0)}


@dataclass(frozen=True)
class DriftMoveSpec:
    """One wall-crawl cycle: a pinned robot advances b_step along its
    wall while free robots net b_step - slip with zero normal drift."""

    slip: float
    b_step: float
    wiggle: float
    wall: str
    direction: int = 1

    def __post_init__(self):
        if self.wall not in _AWAY:
            raise DomainError(f"unknown wall {self.wall!r}")
        if self.direction not in (1, -1):
            raise DomainError("direction must be +1 or -1")
        if not (0 < self.slip <= self.b_step):
            raise DomainError("need 0 < slip <= b_step")
        if not (self.wiggle > 0):
            raise DomainError("wiggle must be positive")


def drift_move(spec: DriftMoveSpec) -> MoveSequence:
    """Three commands: half-step off the wall, half-step back on, slip back.

    The wall-touching robot skips the final parallel command (friction
    pins it), so it outpaces everyone else by exactly ``slip``.
    """
    ax, ay = _AWAY[spec.wall]
    tx, ty = (spec.direction, 0) if ay else (0, spec.direction)
    h = spec.b_step / 2
    seq = MoveSequence()
    tag = f"drift {spec.wall} {'+' if spec.direction > 0 else '-'}"
    seq.append(_q(h * tx + spec.wiggle * ax), _q(h * ty + spec.wiggle * ay), tag)
    seq.append(_q(h * tx - spec.wiggle * ax), _q(h * ty - spec.wiggle * ay), tag)
    seq.append(_q(-spec.slip * tx), _q(-spec.slip * ty), tag)
    return seq


def total_distance(seq: MoveSequence) -> float:
    """Sum of command magnitudes."""
    return seq.total_length


# ---------------------------------------------------------------------------
# serialization

def plan_to_text(seq: MoveSequence) -> str:
    """One `dx dy` line per command; notes become preceding # lines."""
    lines = []
    last_note = None
    for c in seq:
        if c.note and c.note != last_note:
            lines.append("# " + c.note.replace("\n", " "))
        last_note = c.note
        lines.append(f"{c.dx:.12f} {c.dy:.12f}")
    return "\n".join(lines) + ("\n" if lines else "")


def plan_from_text(text: str) -> MoveSequence:
    seq = MoveSequence()
    note = ""
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            note = line[1:].strip()
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DomainError(f"line {ln}: expected 'dx dy', got {raw!r}")
        try:
            dx, dy = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise DomainError(f"line {ln}: {exc}") from None
        seq.append(dx, dy, note)
    return seq
