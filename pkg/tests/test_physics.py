"""Disc simulator: single-disc wall behavior against the friction law,
plus the frozen open-loop sweep."""
import math

import numpy as np
import pytest

from swarmshape.errors import ParamError, StateError, StatsError
from swarmshape.friction import FrictionParams, forward_force
from swarmshape.kinematics import Workspace
from swarmshape.physics import (
    ControlInput, DiscSwarm, SimParams, covariance_excursion,
    friction_sweep_levels, hex_packed_swarm, run_open_loop, run_program,
    step, swarm_stats,
)

WS = Workspace(100.0, 100.0)


def _one(x, y, radius=1.0):
    return DiscSwarm(WS, radius, [(x, y)])


# ---------------------------------------------------------------- validation

def test_sim_params_validation():
    SimParams()
    for bad in (dict(dt=0.0), dict(dt=-1.0), dict(mobility=0.0),
                dict(mu_f=-0.1), dict(stiffness=0.0)):
        with pytest.raises(ParamError):
            SimParams(**bad)


def test_control_input_validation():
    ControlInput(0.0, 0.0, 1.0)
    with pytest.raises(ParamError):
        ControlInput(-1.0, 0.0, 1.0)
    with pytest.raises(ParamError):
        ControlInput(1.0, 0.0, 0.0)
    with pytest.raises(ParamError):
        ControlInput(1.0, math.nan, 1.0)


def test_swarm_validation():
    with pytest.raises(StateError):
        DiscSwarm(WS, 0.0, [(5.0, 5.0)])
    with pytest.raises(StateError):
        DiscSwarm(WS, 1.0, [])
    with pytest.raises(StateError):
        DiscSwarm(WS, 1.0, [(5.0, 5.0, 1.0)])
    with pytest.raises(StateError):
        DiscSwarm(WS, 1.0, [(math.nan, 5.0)])
    # center must sit at least one radius from every wall
    with pytest.raises(StateError):
        DiscSwarm(WS, 1.0, [(0.5, 5.0)])
    with pytest.raises(StateError):
        DiscSwarm(WS, 1.0, [(5.0, 99.5)])
    DiscSwarm(WS, 1.0, [(1.0, 1.0)])  # exactly on the inset is fine


# ------------------------------------------------------------- free dynamics

def test_free_disc_moves_at_drive_velocity():
    p = SimParams()
    u = ControlInput(2.0, 0.3, 1.0)
    after = step(_one(50.0, 50.0), u, p)
    want = np.array([50.0, 50.0]) + p.dt * p.mobility * 2.0 * np.array(
        [math.cos(0.3), math.sin(0.3)])
    assert np.allclose(after.positions[0], want, rtol=0, atol=1e-15)


def test_zero_force_is_identity():
    sw = DiscSwarm(WS, 1.0, [(10.0, 10.0), (20.0, 20.0), (30.0, 10.0)])
    after = step(sw, ControlInput(0.0, 0.0, 1.0), SimParams())
    assert (after.positions == sw.positions).all()


def test_contact_pair_repels_symmetrically():
    p = SimParams()
    sw = DiscSwarm(WS, 1.0, [(50.0, 50.0), (51.5, 50.0)])  # overlap 0.5
    after = step(sw, ControlInput(0.0, 0.0, 1.0), p)
    push = p.dt * p.mobility * p.stiffness * 0.5
    assert after.positions[0] == pytest.approx([50.0 - push, 50.0], abs=1e-12)
    assert after.positions[1] == pytest.approx([51.5 + push, 50.0], abs=1e-12)


def test_no_force_beyond_diameter():
    sw = DiscSwarm(WS, 1.0, [(50.0, 50.0), (52.0 + 1e-9, 50.0)])
    after = step(sw, ControlInput(0.0, 0.0, 1.0), SimParams())
    assert (after.positions == sw.positions).all()


def test_contact_sum_is_internal():
    # contact forces cancel pairwise, so away from walls the mean moves
    # at exactly the drive velocity no matter how tangled the blob is
    p = SimParams()
    sw = hex_packed_swarm(WS, 1.0, 60, seed=3)
    u = ControlInput(2.0, 1.1, 1.0)
    before = sw.positions.mean(axis=0)
    for _ in range(50):
        sw = step(sw, u, p)
    want = before + 50 * p.dt * p.mobility * 2.0 * np.array(
        [math.cos(1.1), math.sin(1.1)])
    assert np.allclose(sw.positions.mean(axis=0), want, rtol=0, atol=1e-9)


# ------------------------------------------------------- wall contact model

@pytest.mark.parametrize("mu", [0.0, 0.4, math.sqrt(2.0), 3.0])
def test_floor_slide_matches_friction_law(mu):
    # disc resting on the floor, pushed down-and-along: tangential speed
    # must follow forward_force with theta measured from the inward normal
    p = SimParams(mu_f=mu)
    fp = FrictionParams(mu)
    F = 2.0
    for theta in np.linspace(-0.9 * math.pi, -0.1 * math.pi, 25):
        after = step(_one(50.0, 1.0), ControlInput(F, theta, 1.0), p)
        vx = (after.positions[0, 0] - 50.0) / (p.dt * p.mobility)
        want = forward_force(F, theta + math.pi / 2, fp)
        assert vx == pytest.approx(want, abs=1e-12)
        assert after.positions[0, 1] == 1.0  # stays seated


def test_touching_but_pulling_away_is_free():
    p = SimParams(mu_f=5.0)
    after = step(_one(50.0, 1.0), ControlInput(2.0, math.pi / 4, 1.0), p)
    v = (after.positions[0] - [50.0, 1.0]) / (p.dt * p.mobility)
    assert v == pytest.approx([math.sqrt(2.0), math.sqrt(2.0)], abs=1e-12)


def test_side_wall_slide_matches_friction_law():
    p = SimParams(mu_f=0.8)
    F = 2.0
    after = step(_one(1.0, 50.0), ControlInput(F, 3 * math.pi / 4, 1.0), p)
    v = (after.positions[0] - [1.0, 50.0]) / (p.dt * p.mobility)
    drive = F / math.sqrt(2.0)
    assert v[0] == 0.0
    assert v[1] == pytest.approx(drive - 0.8 * drive, abs=1e-12)


def test_corner_pressed_both_ways_stays_put():
    for mu in (0.0, 1.0):
        after = step(_one(1.0, 1.0), ControlInput(2.0, -3 * math.pi / 4, 1.0),
                     SimParams(mu_f=mu))
        assert (after.positions[0] == [1.0, 1.0]).all()


def test_corner_sliding_out_along_floor():
    # pressing the floor only; the side wall is touched but not loaded
    mu = 1.0
    F = 2.0
    after = step(_one(1.0, 1.0), ControlInput(F, -math.pi / 4, 1.0),
                 SimParams(mu_f=mu))
    v = (after.positions[0] - [1.0, 1.0]) / SimParams().dt
    want = forward_force(F, math.pi / 4, FrictionParams(mu))
    assert v[0] == pytest.approx(want, abs=1e-12)
    assert v[1] == 0.0


def test_wall_clip_stops_at_inset():
    p = SimParams()
    after = step(_one(50.0, 1.0 + 1e-4), ControlInput(5.0, -math.pi / 2, 1.0), p)
    assert after.positions[0, 1] == 1.0


def test_sweep_levels_saturate_in_thirds():
    F = 2.0
    levels = friction_sweep_levels()
    assert levels[0] == 0.0
    drive = F / math.sqrt(2.0)
    for k, mu in enumerate(levels):
        net = forward_force(F, math.pi / 4, FrictionParams(mu))
        assert net == pytest.approx(max(drive - k * F / 3.0, 0.0), abs=1e-12)
    assert forward_force(F, math.pi / 4, FrictionParams(levels[3])) == 0.0


# ------------------------------------------------------------------- swarms

def test_swarm_stats_square():
    sw = DiscSwarm(WS, 1.0, [(49.0, 49.0), (51.0, 49.0),
                             (49.0, 51.0), (51.0, 51.0)])
    m = swarm_stats(sw)
    assert (m.mean_x, m.mean_y) == (50.0, 50.0)
    assert (m.var_x, m.var_y, m.cov_xy) == (1.0, 1.0, 0.0)


def test_swarm_stats_needs_two():
    with pytest.raises(StatsError):
        swarm_stats(_one(50.0, 50.0))


def test_hex_packed_swarm_shape():
    sw = hex_packed_swarm(WS, 1.0, 144, seed=7, center=(30.0, 15.0))
    assert sw.n == 144
    assert np.linalg.norm(sw.positions.mean(axis=0) - [30.0, 15.0]) < 0.6
    d = sw.positions[None, :, :] - sw.positions[:, None, :]
    dist = np.hypot(d[..., 0], d[..., 1])
    np.fill_diagonal(dist, np.inf)
    assert dist.min() > 2.0  # spacing 2.04 minus 1% jitter keeps clearance


def test_hex_packed_swarm_deterministic():
    a = hex_packed_swarm(WS, 1.0, 40, seed=5)
    b = hex_packed_swarm(WS, 1.0, 40, seed=5)
    c = hex_packed_swarm(WS, 1.0, 40, seed=6)
    assert (a.positions == b.positions).all()
    assert (a.positions != c.positions).any()


def test_hex_packed_swarm_needs_discs():
    with pytest.raises(ParamError):
        hex_packed_swarm(WS, 1.0, 0)


def test_run_program_trace_timing():
    sw = hex_packed_swarm(WS, 1.0, 10, seed=1)
    p = SimParams()
    trace, final = run_program(sw, [ControlInput(1.0, 0.0, 0.5)], p,
                               sample_every=8)
    ts = [t for t, _ in trace]
    assert ts[0] == 0.0
    assert ts[-1] == pytest.approx(0.5, abs=p.dt)
    assert all(a < b for a, b in zip(ts, ts[1:]))
    assert final.n == 10


def test_simulation_is_deterministic():
    program = [ControlInput(2.0, -1.2, 2.0)]
    outs = []
    for _ in range(2):
        sw = hex_packed_swarm(WS, 1.0, 50, seed=9, center=(50.0, 20.0))
        _, final = run_program(sw, program, SimParams(mu_f=0.5))
        outs.append(final.positions.copy())
    assert (outs[0] == outs[1]).all()


def test_settled_overlap_stays_small():
    sw = hex_packed_swarm(WS, 1.0, 144, seed=7, center=(50.0, 16.0))
    _, final = run_program(sw, [ControlInput(2.0, -math.pi / 2, 8.0)],
                           SimParams())
    d = final.positions[None, :, :] - final.positions[:, None, :]
    dist = np.hypot(d[..., 0], d[..., 1])
    np.fill_diagonal(dist, np.inf)
    # a ~12-row pile loads its bottom contacts to ~12 F / stiffness, so
    # the worst pair sits a bit under 6% into each other, no worse
    assert dist.min() >= 2.0 * 0.92


def test_open_loop_shares_initial_conditions():
    sw = hex_packed_swarm(WS, 1.0, 12, seed=2)
    res = run_open_loop(sw, [ControlInput(1.0, 0.0, 0.1)], SimParams())
    assert set(res) == set(friction_sweep_levels())
    first = [trace[0][1] for trace in res.values()]
    assert all(m == first[0] for m in first)


def test_covariance_excursion_picks_range():
    fake = [(0.0, swarm_stats(DiscSwarm(WS, 1.0, [(49, 49), (51, 51)]))),
            (1.0, swarm_stats(DiscSwarm(WS, 1.0, [(49, 51), (51, 49)])))]
    assert covariance_excursion(fake) == pytest.approx(2.0)


def test_friction_sweep_excursion_monotone():
    # frozen scenario: blob slid along the floor at a shallow angle; the
    # floor drag on the bottom row grows with mu_f, shearing the blob
    sw = hex_packed_swarm(WS, 1.0, 144, seed=7, center=(30.0, 15.0))
    res = run_open_loop(sw, [ControlInput(2.0, -0.35, 14.0)], SimParams())
    exc = [covariance_excursion(res[mu]) for mu in friction_sweep_levels()]
    assert exc[0] == min(exc)
    assert all(b >= a * 0.95 for a, b in zip(exc, exc[1:]))
    assert exc == pytest.approx([1.40, 2.63, 7.38, 8.74], abs=0.25)
