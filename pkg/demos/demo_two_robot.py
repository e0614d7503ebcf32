"""Steering two robots to two different targets with one joystick.

Every command moves both robots by the same amount; only the walls can
hold one robot still while the other keeps moving.  The planner
alternates wall-pinning passes (to fix the spacing, one axis at a
time) with a final free translation, and the whole plan replays
exactly in the kinematic simulator.
"""
from pathlib import Path

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from swarmshape.kinematics import apply_sequence
from swarmshape.planning import TwoRobotTask, arrange_two_robots, \
    plan_to_text, spacing_rounds, total_distance

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

task = TwoRobotTask((0.25, 0.70), (0.55, 0.30), (0.80, 0.62), (0.35, 0.45), 1.0)
seq = arrange_two_robots(task)
states = apply_sequence(task.workspace, task.start_state(), seq)

p1 = np.array([s.positions[0] for s in states])
p2 = np.array([s.positions[1] for s in states])

fig, ax = plt.subplots(figsize=(6, 6))
ax.add_patch(plt.Rectangle((0, 0), 1, 1, fill=False, color="k", lw=1.5))
ax.plot(p1[:, 0], p1[:, 1], "o-", color="#4878cf", ms=3, label="robot 1")
ax.plot(p2[:, 0], p2[:, 1], "o-", color="#d65f5f", ms=3, label="robot 2")
for p, e, c in ((p1, task.e1, "#4878cf"), (p2, task.e2, "#d65f5f")):
    ax.plot(*p[0], "s", color=c, ms=10, mfc="none", mew=2)
    ax.plot(*e, "*", color=c, ms=16)
ax.set_aspect("equal")
ax.set_xlim(-0.06, 1.06)
ax.set_ylim(-0.06, 1.06)
ax.legend(loc="lower right")
ax.set_title("squares: starts, stars: goals; walls do the splitting")
fig.tight_layout()
fig.savefig(OUT / "two_robot_paths.png", dpi=130)
print("wrote", OUT / "two_robot_paths.png")

final = states[-1].positions
err = max(abs(final[0][0] - task.e1[0]), abs(final[0][1] - task.e1[1]),
          abs(final[1][0] - task.e2[0]), abs(final[1][1] - task.e2[1]))
print(f"{len(seq)} commands, travel {total_distance(seq):.3f}, "
      f"x rounds {spacing_rounds(seq, 'x')}, "
      f"y rounds {spacing_rounds(seq, 'y')}, replay error {err:.1e}")
print()
print(plan_to_text(seq))
