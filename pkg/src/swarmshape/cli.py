"""Command-line experiment runner.

Each scenario kind validates its config up front, computes everything in
memory, then writes CSV artifacts plus a manifest.json holding the
resolved parameters, the seed, and a sha256 per artifact.  Runs are
deterministic for a fixed seed, so re-running a manifest's scenario
reproduces its files byte for byte on the same platform.

Exit codes: 0 ok, 64 usage, 65 bad config or data, 70 internal error.
"""

import argparse
import csv
import hashlib
import json
import math
import os
import sys
import traceback

import numpy as np

from .assembly import Zones, arrange_n_robots, delivery_order, grid_replay, \
    sort_goals, verify_assembly
from .covariance import ControllerState, CovarianceGoal, run_closed_loop
from .errors import SwarmShapeError
from .kinematics import Workspace, apply_sequence
from .physics import ControlInput, SimParams, covariance_excursion, \
    friction_sweep_levels, hex_packed_swarm, run_open_loop
from .planning import TwoRobotTask, arrange_two_robots, plan_to_text, \
    spacing_rounds, total_distance
from .settling import sweep_statistics

KINDS = ("square-sweep", "circle-sweep", "two-robot", "n-robot",
         "open-loop-friction", "closed-loop-cov")
OUT_ENV = "SWARMSHAPE_OUT"


class UsageError(Exception):
    pass


class ConfigError(Exception):
    pass


# --------------------------------------------------------------- config

def parse_config(path):
    """Flat key=value lines; blank lines and # comments ignored."""
    raw = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}")
    for num, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{path}:{num}: expected key=value, got {line!r}")
        key, value = text.split("=", 1)
        key, value = key.strip(), value.strip()
        if not key:
            raise ConfigError(f"{path}:{num}: empty key")
        if key in raw:
            raise ConfigError(f"{path}:{num}: duplicate key {key!r}")
        raw[key] = value
    return raw


def _float(v):
    try:
        out = float(v)
    except ValueError:
        raise ConfigError(f"expected a number, got {v!r}")
    if not math.isfinite(out):
        raise ConfigError(f"expected a finite number, got {v!r}")
    return out


def _int(v):
    try:
        return int(v)
    except ValueError:
        raise ConfigError(f"expected an integer, got {v!r}")


def _float_list(v):
    items = [s for s in v.split(",") if s.strip()]
    if not items:
        raise ConfigError(f"expected a comma-separated list, got {v!r}")
    return tuple(_float(s) for s in items)


def _point(v):
    vals = _float_list(v)
    if len(vals) != 2:
        raise ConfigError(f"expected x,y — got {v!r}")
    return vals


def _choice(*options):
    def parse(v):
        if v not in options:
            raise ConfigError(f"expected one of {options}, got {v!r}")
        return v
    return parse


_REQUIRED = object()


def resolve(raw, schema):
    """Coerce raw strings through the schema; reject unknown/missing keys."""
    params = {}
    for key, value in raw.items():
        if key == "seed":
            continue  # handled by the harness
        if key not in schema:
            raise ConfigError(f"unknown config key {key!r}")
        parser = schema[key][0]
        try:
            params[key] = parser(value)
        except ConfigError as e:
            raise ConfigError(f"key {key!r}: {e}")
    for key, (_, default) in schema.items():
        if key not in params:
            if default is _REQUIRED:
                raise ConfigError(f"missing required config key {key!r}")
            params[key] = default
    return params


# ------------------------------------------------------------ scenarios

def _moment_rows(rows, fill_name):
    header = [fill_name, "beta", "mean_x", "mean_y",
              "var_x", "var_y", "cov_xy", "corr"]
    data = [(r["fill"], r["beta"], r["mean_x"], r["mean_y"],
             r["var_x"], r["var_y"], r["cov_xy"], r["corr"]) for r in rows]
    return header, data


def run_square_sweep(p, seed):
    for a in p["A"]:
        if not (0.0 < a <= 1.0):
            raise ConfigError(f"A values must be in (0, 1], got {a}")
    if p["beta_samples"] < 1:
        raise ConfigError("beta_samples must be >= 1")
    rows = sweep_statistics("square", p["A"], p["beta_samples"])
    summary = ["A        rows   mean_x range",
               *(f"{a:<8g} {p['beta_samples']:<6d} "
                 f"[{min(r['mean_x'] for r in rows if r['fill'] == a):.4f}, "
                 f"{max(r['mean_x'] for r in rows if r['fill'] == a):.4f}]"
                 for a in p["A"])]
    return {"square_sweep.csv": _moment_rows(rows, "A")}, summary


def run_circle_sweep(p, seed):
    for h in p["h"]:
        if not (0.0 < h <= 2.0):
            raise ConfigError(f"h values must be in (0, 2], got {h}")
    if p["beta_samples"] < 1:
        raise ConfigError("beta_samples must be >= 1")
    rows = sweep_statistics("circle", p["h"], p["beta_samples"])
    summary = ["h        rows   var_y range",
               *(f"{h:<8g} {p['beta_samples']:<6d} "
                 f"[{min(r['var_y'] for r in rows if r['fill'] == h):.5f}, "
                 f"{max(r['var_y'] for r in rows if r['fill'] == h):.5f}]"
                 for h in p["h"])]
    return {"circle_sweep.csv": _moment_rows(rows, "h")}, summary


def run_two_robot(p, seed):
    task = TwoRobotTask(p["s1"], p["s2"], p["e1"], p["e2"], p["L"])
    seq = arrange_two_robots(task)
    states = apply_sequence(task.workspace, task.start_state(), seq)
    header = ["step", "dx", "dy", "note", "x1", "y1", "x2", "y2"]
    rows = [(i + 1, c.dx, c.dy, c.note,
             s.positions[0][0], s.positions[0][1],
             s.positions[1][0], s.positions[1][1])
            for i, (c, s) in enumerate(zip(seq, states[1:]))]
    err = max(abs(states[-1].positions[0][0] - task.e1[0]),
              abs(states[-1].positions[0][1] - task.e1[1]),
              abs(states[-1].positions[1][0] - task.e2[0]),
              abs(states[-1].positions[1][1] - task.e2[1]))
    summary = [f"commands        {len(seq)}",
               f"rounds x/y      {spacing_rounds(seq, 'x')}/"
               f"{spacing_rounds(seq, 'y')}",
               f"total distance  {total_distance(seq):.6f}",
               f"replay error    {err:.3e}"]
    return {"plan.txt": plan_to_text(seq),
            "replay.csv": (header, rows)}, summary


def _grid_goals(n, eps):
    # two-row block: wide shapes keep the delivery corridor short
    w = -(-n // 2)
    x0, y0 = eps + 3, 3 * eps + 3
    return [(x0 + i % w, y0 + i // w) for i in range(n)]


def _random_goals(n, eps, rng):
    side = math.isqrt(4 * n) + 2
    x0, y0 = eps + 3, 3 * eps + 3
    cells = [(x0 + i, y0 + j) for i in range(side) for j in range(side)]
    picks = rng.choice(len(cells), size=n, replace=False)
    return [cells[i] for i in picks]


def run_n_robot(p, seed):
    if p["n"] < 1:
        raise ConfigError("n must be >= 1")
    if p["clearance"] < 1:
        raise ConfigError("clearance must be >= 1")
    rng = np.random.Generator(np.random.Philox(seed))
    goals = (_grid_goals(p["n"], p["clearance"]) if p["shape"] == "grid"
             else _random_goals(p["n"], p["clearance"], rng))
    zones = Zones.for_goals(sort_goals(goals), clearance=p["clearance"])
    seq = arrange_n_robots(zones)
    states = grid_replay(zones, seq)
    dist = total_distance(seq)
    order = delivery_order(zones)
    header = ["step", "dx", "dy", "note", "centroid_x", "centroid_y"]
    rows = []
    for i, (c, st) in enumerate(zip(seq, states[1:])):
        cx, cy = st.positions.mean(axis=0)
        rows.append((i + 1, c.dx, c.dy, c.note, float(cx), float(cy)))
    final = states[-1].as_tuples()
    fin_header = ["robot", "x", "y", "goal_x", "goal_y"]
    fin_rows = [(order[k], final[order[k]][0], final[order[k]][1],
                 zones.goals[k][0], zones.goals[k][1])
                for k in range(zones.n)]
    if not verify_assembly(zones, seq):
        raise SwarmShapeError("assembly replay failed verification")
    summary = [f"robots          {zones.n}",
               f"workspace       {zones.width} x {zones.height}",
               f"commands        {len(seq)}",
               f"total distance  {dist:g}",
               "verified        yes"]
    return {"plan.txt": plan_to_text(seq),
            "replay.csv": (header, rows),
            "final_positions.csv": (fin_header, fin_rows)}, summary


def _stats_columns(m):
    return (m.mean_x, m.mean_y, m.var_x, m.var_y, m.cov_xy, m.corr)


def run_open_loop_friction(p, seed):
    if p["n"] < 2:
        raise ConfigError("n must be >= 2")
    ws = Workspace(p["width"], p["height"])
    swarm = hex_packed_swarm(ws, p["radius"], p["n"], seed=seed,
                             center=p["center"])
    program = [ControlInput(p["force"], p["angle"], p["duration"])]
    res = run_open_loop(swarm, program, SimParams(),
                        sample_every=p["sample_every"])
    trace_header = ["mu_f", "t", "mean_x", "mean_y",
                    "var_x", "var_y", "cov_xy", "corr"]
    trace_rows = [(mu, t, *_stats_columns(m))
                  for mu, trace in res.items() for t, m in trace]
    exc = [(mu, covariance_excursion(res[mu])) for mu in res]
    summary = ["mu_f     excursion",
               *(f"{mu:<8.4f} {e:.4f}" for mu, e in exc)]
    mono = all(a[1] <= b[1] for a, b in zip(exc, exc[1:]))
    summary.append(f"monotone non-decreasing: {'yes' if mono else 'no'}")
    return {"excursions.csv": (["mu_f", "excursion"], exc),
            "traces.csv": (trace_header, trace_rows)}, summary


def run_closed_loop_cov(p, seed):
    if p["n"] < 2:
        raise ConfigError("n must be >= 2")
    if p["epochs"] < 1:
        raise ConfigError("epochs must be >= 1")
    ws = Workspace(p["width"], p["height"])
    swarm = hex_packed_swarm(ws, p["radius"], p["n"], seed=seed,
                             center=p["center"])
    schedule = []
    for k in range(p["epochs"]):
        cov = p["goal_cov"] * (-1) ** k  # alternating sign per epoch
        schedule.append((k * p["epoch_duration"],
                         CovarianceGoal(p["goal_var_x"], p["goal_var_y"],
                                        cov, p["c1"])))
    control = ControllerState(center=(ws.width / 2, ws.height / 2),
                              radius=p["radius"], force=p["force"],
                              step_duration=p["step_duration"])
    res = run_closed_loop(swarm, schedule, SimParams(mu_f=p["mu_f"]),
                          p["epochs"] * p["epoch_duration"],
                          control=control, band_floor=p["band_floor"])
    s_header = ["t", "phase", "mean_x", "mean_y", "var_x", "var_y",
                "cov_xy", "corr", "goal_var_x", "goal_var_y", "goal_cov"]
    s_rows = [(t, ph, *_stats_columns(m),
               g.goal_var_x, g.goal_var_y, g.goal_cov)
              for t, ph, m, g in res.series]
    p_header = ["t", "from", "to", "var_x", "var_y", "cov_xy",
                "goal_var_x", "goal_var_y", "goal_cov"]
    p_rows = []
    for tr in res.transitions:
        goal = next(g for t0, g in reversed(schedule) if tr.t >= t0 - 1e-9)
        p_rows.append((tr.t, tr.frm, tr.to, tr.stats.var_x, tr.stats.var_y,
                       tr.stats.cov_xy, goal.goal_var_x, goal.goal_var_y,
                       goal.goal_cov))
    e_header = ["start", "end", "goal_cov", "band", "reached", "reached_at"]
    e_rows = [(ep.start, ep.end, ep.goal.goal_cov, ep.band,
               int(ep.reached), ep.reached_at) for ep in res.epochs]
    summary = ["epoch  goal_cov  reached  at",
               *(f"{k:<6d} {ep.goal.goal_cov:<+9.3g} "
                 f"{'yes' if ep.reached else 'no':<8} "
                 f"{'-' if ep.reached_at is None else f'{ep.reached_at:.2f}'}"
                 for k, ep in enumerate(res.epochs))]
    return {"stats.csv": (s_header, s_rows),
            "phase_log.csv": (p_header, p_rows),
            "epochs.csv": (e_header, e_rows)}, summary


SCENARIOS = {
    "square-sweep": (run_square_sweep, {
        "A": (_float_list, _REQUIRED),
        "beta_samples": (_int, 360),
    }),
    "circle-sweep": (run_circle_sweep, {
        "h": (_float_list, _REQUIRED),
        "beta_samples": (_int, 360),
    }),
    "two-robot": (run_two_robot, {
        "s1": (_point, _REQUIRED),
        "s2": (_point, _REQUIRED),
        "e1": (_point, _REQUIRED),
        "e2": (_point, _REQUIRED),
        "L": (_float, 1.0),
    }),
    "n-robot": (run_n_robot, {
        "n": (_int, _REQUIRED),
        "shape": (_choice("grid", "random"), "grid"),
        "clearance": (_int, 1),
    }),
    "open-loop-friction": (run_open_loop_friction, {
        "n": (_int, 144),
        "radius": (_float, 1.0),
        "width": (_float, 100.0),
        "height": (_float, 100.0),
        "center": (_point, (30.0, 15.0)),
        "force": (_float, 2.0),
        "angle": (_float, -0.35),
        "duration": (_float, 14.0),
        "sample_every": (_int, 8),
    }),
    "closed-loop-cov": (run_closed_loop_cov, {
        "n": (_int, 144),
        "radius": (_float, 1.0),
        "width": (_float, 100.0),
        "height": (_float, 100.0),
        "center": (_point, (50.0, 50.0)),
        "mu_f": (_float, 2.0 * math.sqrt(2.0) / 3.0),
        "force": (_float, 2.0),
        "step_duration": (_float, 0.25),
        "epochs": (_int, 3),
        "epoch_duration": (_float, 150.0),
        "goal_var_x": (_float, 400.0),
        "goal_var_y": (_float, 40.0),
        "goal_cov": (_float, 15.0),
        "c1": (_float, 0.1),
        "band_floor": (_float, 50.0),
    }),
}


# -------------------------------------------------------------- writing

def _fmt(v):
    if isinstance(v, float):
        return repr(float(v))  # plain shortest round-trip, no numpy wrapper
    if v is None:
        return ""
    return str(v)


def _write_outputs(out_dir, outputs):
    os.makedirs(out_dir, exist_ok=True)
    checksums = {}
    for name, payload in outputs.items():
        path = os.path.join(out_dir, name)
        if isinstance(payload, str):
            blob = payload.encode("utf-8")
            with open(path, "wb") as fh:
                fh.write(blob)
        else:
            header, rows = payload
            with open(path, "w", encoding="utf-8", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(header)
                for row in rows:
                    w.writerow([_fmt(v) for v in row])
            with open(path, "rb") as fh:
                blob = fh.read()
        checksums[name] = hashlib.sha256(blob).hexdigest()
    return checksums


def run_scenario(kind, config_path, seed=None, out_dir=None):
    """Validate, compute, then write artifacts + manifest.  Returns the
    manifest dict."""
    runner, schema = SCENARIOS[kind]
    raw = parse_config(config_path)
    if seed is None:
        seed = _int(raw["seed"]) if "seed" in raw else 0
    params = resolve(raw, schema)
    out_dir = out_dir or os.environ.get(OUT_ENV) or "."
    outputs, summary = runner(params, seed)
    checksums = _write_outputs(out_dir, outputs)
    manifest = {"kind": kind, "seed": seed,
                "params": {k: list(v) if isinstance(v, tuple) else v
                           for k, v in sorted(params.items())},
                "outputs": checksums}
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for line in summary:
        print(line)
    return manifest


# ------------------------------------------------------------------ cli

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser():
    p = _Parser(prog="swarmshape", add_help=True,
                description="run a named swarm-shaping scenario")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    return p


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except UsageError as e:
        print(f"swarmshape: {e}", file=sys.stderr)
        return 64
    except SystemExit as e:  # --help
        return 0 if e.code in (0, None) else 64
    try:
        run_scenario(args.kind, args.config, args.seed, args.out)
    except (ConfigError, SwarmShapeError) as e:
        print(f"swarmshape: {e}", file=sys.stderr)
        return 65
    except Exception:
        traceback.print_exc()
        return 70
    return 0


if __name__ == "__main__":
    sys.exit(main())
