"""Two-robot planner and drift-move tests: everything checked by replay."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from swarmshape.errors import DomainError, TaskError
from swarmshape.kinematics import (
    MoveSequence, RobotState, Workspace, apply_sequence,
)
from swarmshape.planning import (
    DriftMoveSpec, TwoRobotTask, arrange_two_robots, drift_move,
    plan_from_text, plan_to_text, spacing_rounds, total_distance,
    x_spacing, y_spacing,
)


def replay(task, seq):
    return apply_sequence(task.workspace, task.start_state(), seq)


def final(task, seq):
    return replay(task, seq)[-1].positions


# ---------------------------------------------------------------------------
# task validation

def test_task_outside_rejected():
    with pytest.raises(TaskError):
        TwoRobotTask((0.0, 0.5), (0.5, 0.6), (0.2, 0.2), (0.4, 0.4), 1.0)
    with pytest.raises(TaskError):
        TwoRobotTask((0.1, 0.5), (0.5, 0.6), (0.2, 1.5), (0.4, 0.4), 1.0)


def test_task_coincident_rejected():
    with pytest.raises(TaskError):
        TwoRobotTask((0.3, 0.3), (0.3, 0.3), (0.2, 0.2), (0.4, 0.4), 1.0)
    with pytest.raises(TaskError):
        TwoRobotTask((0.3, 0.3), (0.5, 0.5), (0.4, 0.4), (0.4, 0.4), 1.0)


def test_task_bad_length():
    with pytest.raises(TaskError):
        TwoRobotTask((0.3, 0.3), (0.5, 0.5), (0.2, 0.2), (0.4, 0.4), 0.0)


# ---------------------------------------------------------------------------
# x_spacing / y_spacing

def deltas(positions):
    (x1, y1), (x2, y2) = positions
    return x1 - x2, y1 - y2


def test_x_spacing_sets_gap_and_conserves_y():
    task = TwoRobotTask((0.2, 0.3), (0.6, 0.7), (0.8, 0.2), (0.3, 0.9), 1.0)
    seq, state = x_spacing(task)
    gx = task.e1[0] - task.e2[0]
    traj = replay(task, seq)
    dx, dy = deltas(traj[-1].positions)
    assert abs(dx - gx) <= 1e-9
    dy0 = deltas(traj[0].positions)[1]
    for s in traj:  # conservation must hold at every intermediate state
        assert abs(deltas(s.positions)[1] - dy0) <= 1e-9
    assert abs(deltas(state.positions)[1] - dy0) <= 1e-9


def test_x_spacing_sign_flip():
    # robot 1 starts left of robot 2 but must end to its right
    task = TwoRobotTask((0.2, 0.3), (0.6, 0.7), (0.8, 0.2), (0.3, 0.9), 1.0)
    seq, state = x_spacing(task)
    assert deltas(state.positions)[0] > 0


def test_x_spacing_zero_rounds_when_satisfied():
    task = TwoRobotTask((0.2, 0.3), (0.6, 0.7), (0.1, 0.2), (0.5, 0.9), 1.0)
    seq, state = x_spacing(task)
    assert len(seq) == 0


def test_y_spacing_requires_x_first():
    task = TwoRobotTask((0.2, 0.3), (0.6, 0.7), (0.8, 0.2), (0.3, 0.9), 1.0)
    with pytest.raises(TaskError):
        y_spacing(task)


def test_y_spacing_finishes_at_goals():
    e1, e2 = (0.8, 0.2), (0.3, 0.9)
    task = TwoRobotTask((0.2, 0.3), (0.6, 0.7), e1, e2, 1.0)
    seq_x, state = x_spacing(task)
    mid = TwoRobotTask(tuple(state.positions[0]), tuple(state.positions[1]),
                       e1, e2, 1.0)
    seq_y, state = y_spacing(mid)
    for p, e in zip(state.positions, (e1, e2)):
        assert abs(p[0] - e[0]) <= 1e-9 and abs(p[1] - e[1]) <= 1e-9
    # x gap must have been conserved through the whole y pass
    traj = replay(mid, seq_y)
    for s in traj:
        assert abs(deltas(s.positions)[0] - (e1[0] - e2[0])) <= 1e-9


def test_two_rounds_suffice_for_large_correction():
    # correction close to L forces the two-round far-edge strategy
    task = TwoRobotTask((0.05, 0.3), (0.9, 0.7), (0.9, 0.2), (0.05, 0.9), 1.0)
    seq, state = x_spacing(task)
    gx = task.e1[0] - task.e2[0]
    assert abs(deltas(state.positions)[0] - gx) <= 1e-9
    assert spacing_rounds(seq, "x") <= 2


# ---------------------------------------------------------------------------
# arrange_two_robots

def check_arrange(task):
    seq = arrange_two_robots(task)
    pos = final(task, seq)
    for p, e in zip(pos, (task.e1, task.e2)):
        assert abs(p[0] - e[0]) <= 1e-9 and abs(p[1] - e[1]) <= 1e-9
    return seq


def test_arrange_basic():
    check_arrange(TwoRobotTask((0.2, 0.3), (0.6, 0.7),
                               (0.8, 0.2), (0.3, 0.9), 1.0))


def test_arrange_swap_positions():
    s1, s2 = (0.3, 0.4), (0.7, 0.6)
    check_arrange(TwoRobotTask(s1, s2, s2, s1, 1.0))


def test_arrange_same_height_starts():
    check_arrange(TwoRobotTask((0.2, 0.5), (0.7, 0.5),
                               (0.6, 0.3), (0.2, 0.8), 1.0))


def test_arrange_same_column_starts():
    check_arrange(TwoRobotTask((0.4, 0.2), (0.4, 0.8),
                               (0.6, 0.3), (0.2, 0.8), 1.0))


def test_arrange_zero_x_goal_gap():
    check_arrange(TwoRobotTask((0.2, 0.3), (0.6, 0.7),
                               (0.5, 0.2), (0.5, 0.8), 1.0))


def test_arrange_zero_y_goal_gap():
    check_arrange(TwoRobotTask((0.2, 0.3), (0.6, 0.7),
                               (0.2, 0.5), (0.8, 0.5), 1.0))


def test_arrange_same_height_to_same_column():
    check_arrange(TwoRobotTask((0.2, 0.5), (0.7, 0.5),
                               (0.5, 0.2), (0.5, 0.8), 1.0))


def test_arrange_identical_start_goal_is_netzero():
    s1, s2 = (0.3, 0.4), (0.7, 0.6)
    seq = arrange_two_robots(TwoRobotTask(s1, s2, s1, s2, 1.0))
    assert len(seq) == 0


def test_arrange_pass_conservation_by_annotation():
    # while an x pass runs, the y gap never moves (and vice versa)
    task = TwoRobotTask((0.2, 0.5), (0.7, 0.5), (0.5, 0.2), (0.5, 0.8), 1.0)
    seq = arrange_two_robots(task)
    traj = apply_sequence(task.workspace, task.start_state(), seq)
    for i, cmd in enumerate(seq):
        dbefore = deltas(traj[i].positions)
        dafter = deltas(traj[i + 1].positions)
        if cmd.note.startswith("x "):
            assert abs(dafter[1] - dbefore[1]) <= 1e-9
        elif cmd.note.startswith("y "):
            assert abs(dafter[0] - dbefore[0]) <= 1e-9
        elif cmd.note.startswith("translate"):
            assert abs(dafter[0] - dbefore[0]) <= 1e-9
            assert abs(dafter[1] - dbefore[1]) <= 1e-9


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_arrange_random_tasks(data):
    coord = st.floats(0.02, 0.98)
    pts = [(data.draw(coord, label=f"{n}x"), data.draw(coord, label=f"{n}y"))
           for n in ("s1", "s2", "e1", "e2")]
    s1, s2, e1, e2 = pts
    if max(abs(s1[0] - s2[0]), abs(s1[1] - s2[1])) < 1e-3:
        return
    if max(abs(e1[0] - e2[0]), abs(e1[1] - e2[1])) < 1e-3:
        return
    check_arrange(TwoRobotTask(s1, s2, e1, e2, 1.0))


def test_arrange_larger_workspace():
    check_arrange(TwoRobotTask((3.0, 14.0), (11.0, 2.5),
                               (1.0, 1.0), (14.0, 14.0), 15.0))


# ---------------------------------------------------------------------------
# drift moves

def drift_replay(spec, pinned_start, free_start, L=1.0):
    ws = Workspace(L, L)
    state = RobotState(ws, [pinned_start, free_start])
    traj = apply_sequence(ws, state, drift_move(spec))
    return traj[-1].positions


@pytest.mark.parametrize("wall,start,tangent", [
    ("top", (0.5, 1.0), (1, 0)),
    ("bottom", (0.5, 0.0), (1, 0)),
    ("left", (0.0, 0.5), (0, 1)),
    ("right", (1.0, 0.5), (0, 1)),
])
def test_drift_cycle_nets(wall, start, tangent):
    spec = DriftMoveSpec(slip=0.02, b_step=0.1, wiggle=0.05, wall=wall)
    pinned, free = drift_replay(spec, start, (0.4, 0.45))
    # pinned robot advances a full step along its wall and stays on it
    for k in range(2):
        assert pinned[k] == pytest.approx(start[k] + 0.1 * tangent[k], abs=1e-12)
    # free robot nets step - slip tangentially and zero normally
    assert free[0] == pytest.approx(0.4 + 0.08 * tangent[0], abs=1e-12)
    assert free[1] == pytest.approx(0.45 + 0.08 * tangent[1], abs=1e-12)


def test_drift_direction_reversed():
    spec = DriftMoveSpec(slip=0.02, b_step=0.1, wiggle=0.05,
                         wall="top", direction=-1)
    pinned, free = drift_replay(spec, (0.5, 1.0), (0.4, 0.45))
    assert pinned[0] == pytest.approx(0.4, abs=1e-12)
    assert free[0] == pytest.approx(0.4 - 0.08, abs=1e-12)


def test_drift_full_slip_keeps_free_static():
    spec = DriftMoveSpec(slip=0.1, b_step=0.1, wiggle=0.05, wall="bottom")
    pinned, free = drift_replay(spec, (0.5, 0.0), (0.4, 0.45))
    assert pinned[0] == pytest.approx(0.6, abs=1e-12)
    assert free[0] == pytest.approx(0.4, abs=1e-12)
    assert free[1] == pytest.approx(0.45, abs=1e-12)


def test_drift_cycle_is_three_commands():
    assert len(drift_move(DriftMoveSpec(0.01, 0.1, 0.02, "left"))) == 3


def test_drift_spec_validation():
    with pytest.raises(DomainError):
        DriftMoveSpec(slip=0.2, b_step=0.1, wiggle=0.05, wall="top")
    with pytest.raises(DomainError):
        DriftMoveSpec(slip=0.0, b_step=0.1, wiggle=0.05, wall="top")
    with pytest.raises(DomainError):
        DriftMoveSpec(slip=0.05, b_step=0.1, wiggle=0.0, wall="top")
    with pytest.raises(DomainError):
        DriftMoveSpec(slip=0.05, b_step=0.1, wiggle=0.05, wall="floor")
    with pytest.raises(DomainError):
        DriftMoveSpec(slip=0.05, b_step=0.1, wiggle=0.05, wall="top",
                      direction=2)


# ---------------------------------------------------------------------------
# distance + serialization

def test_total_distance_345():
    seq = MoveSequence()
    seq.append(3.0, 4.0)
    assert total_distance(seq) == pytest.approx(5.0, abs=1e-15)


def test_plan_text_round_trip():
    task = TwoRobotTask((0.2, 0.3), (0.6, 0.7), (0.8, 0.2), (0.3, 0.9), 1.0)
    seq = arrange_two_robots(task)
    text = plan_to_text(seq)
    back = plan_from_text(text)
    assert len(back) == len(seq)
    for a, b in zip(seq, back):
        assert a.dx == b.dx and a.dy == b.dy and a.note == b.note
    # and the parsed plan still reaches the goals
    pos = final(task, back)
    for p, e in zip(pos, (task.e1, task.e2)):
        assert abs(p[0] - e[0]) <= 1e-9 and abs(p[1] - e[1]) <= 1e-9


def test_plan_text_format():
    seq = MoveSequence()
    seq.append(0.25, -0.5, "step one")
    text = plan_to_text(seq)
    assert text.splitlines()[0] == "# step one"
    assert text.splitlines()[1] == "0.250000000000 -0.500000000000"


def test_plan_from_text_bad_line():
    with pytest.raises(DomainError):
        plan_from_text("0.1 0.2 0.3\n")
    with pytest.raises(DomainError):
        plan_from_text("zero one\n")


def test_plan_from_text_blank_lines_and_comments():
    seq = plan_from_text("# hello\n\n1.0 2.0\n")
    assert len(seq) == 1
    assert seq[0].note == "hello"
