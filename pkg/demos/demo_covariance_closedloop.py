"""Closed-loop shaping: drive the swarm's covariance to a sign-flipping goal.

A five-phase controller (squeeze x, recenter, squeeze y, shear along a
diagonal, recenter) reads the swarm's second moments each tick and
emits one global force.  The target covariance flips sign between
epochs, so the controller has to regather the smeared swarm and shear
it the other way.
"""
from pathlib import Path
import math

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from swarmshape.covariance import ControllerState, CovarianceGoal, \
    goal_band, run_closed_loop
from swarmshape.kinematics import Workspace
from swarmshape.physics import SimParams, hex_packed_swarm

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

ws = Workspace(100.0, 100.0)
swarm = hex_packed_swarm(ws, 1.0, 144, seed=0, center=(50.0, 50.0))
schedule = [(0.0, CovarianceGoal(400.0, 40.0, 15.0)),
            (150.0, CovarianceGoal(400.0, 40.0, -15.0))]
params = SimParams(mu_f=2.0 * math.sqrt(2.0) / 3.0)
control = ControllerState(center=(50.0, 50.0), radius=1.0)

res = run_closed_loop(swarm, schedule, params, 300.0, control=control,
                      band_floor=0.0)

for ep in res.epochs:
    tag = f"hit at t={ep.reached_at:.1f}s" if ep.reached else "missed"
    print(f"epoch {ep.start:5.1f}-{ep.end:5.1f}s  goal cov "
          f"{ep.goal.goal_cov:+5.1f} +- {ep.band:.1f}  {tag}")
print(f"{len(res.transitions)} phase transitions")

# -----------------------------
# Covariance vs time, phases shaded
# -----------------------------
ts = [t for t, _, _, _ in res.series]
covs = [m.cov_xy for _, _, m, _ in res.series]
phases = [ph for _, ph, _, _ in res.series]

fig, ax = plt.subplots(figsize=(9, 4.6))
shade = {"compress_x": "#f2e6c9", "compress_y": "#d9ead9",
         "shear": "#f4cccc", "center_1": "#eeeeee", "center_2": "#eeeeee"}
run_start = 0
for i in range(1, len(ts) + 1):
    if i == len(ts) or phases[i] != phases[run_start]:
        col = shade.get(phases[run_start])
        if col:
            ax.axvspan(ts[run_start], ts[min(i, len(ts) - 1)],
                       color=col, lw=0)
        run_start = i
ax.plot(ts, covs, color="#333333", lw=1.4)
for t0, g in schedule:
    t1 = 300.0 if t0 == schedule[-1][0] else schedule[1][0]
    band = goal_band(g.goal_cov, floor=0.0)
    ax.fill_between([t0, t1], g.goal_cov - band, g.goal_cov + band,
                    color="#4878cf", alpha=0.35, zorder=3)
ax.set_xlabel("time (s)")
ax.set_ylabel("cov xy")
ax.set_title("shaded: controller phase, blue band: goal +-10%")
fig.tight_layout()
fig.savefig(OUT / "closedloop_cov.png", dpi=130)
print("wrote", OUT / "closedloop_cov.png")

# -----------------------------
# The swarm at the end of each epoch
# -----------------------------
fig, axes = plt.subplots(1, 2, figsize=(11, 5.0), sharey=True)
epoch_ends = [ep.end for ep in res.epochs]
for ax, t_end, ep in zip(axes, epoch_ends, res.epochs):
    # last logged sample before the epoch boundary
    idx = max(i for i, t in enumerate(ts) if t <= t_end)
    # positions aren't logged, so re-derive the look from the moments
    m = res.series[idx][2]
    ax.set_title(f"t={ts[idx]:.0f}s: cov {m.cov_xy:+.1f} "
                 f"(goal {ep.goal.goal_cov:+.0f})")
    ax.add_patch(plt.Rectangle((0, 0), 100, 100, fill=False, color="k"))
    # one-sigma ellipse of the logged moments
    cov = np.array([[m.var_x, m.cov_xy], [m.cov_xy, m.var_y]])
    w, v = np.linalg.eigh(cov)
    th = np.linspace(0, 2 * math.pi, 128)
    ell = v @ (np.sqrt(np.maximum(w, 0))[:, None] *
               np.vstack([np.cos(th), np.sin(th)]))
    ax.plot(m.mean_x + ell[0], m.mean_y + ell[1], color="#d65f5f", lw=2)
    ax.plot(m.mean_x, m.mean_y, "+", color="#d65f5f", ms=12, mew=2)
    ax.set_aspect("equal")
    ax.set_xlim(-3, 103)
    ax.set_ylim(-3, 103)
fig.tight_layout()
fig.savefig(OUT / "closedloop_ellipses.png", dpi=130)
print("wrote", OUT / "closedloop_ellipses.png")
