"""Assembling a letter from a packed block, one shared command at a time.

Robots live on a grid and all obey the same move; a robot against a
wall in the move direction simply stays put.  The planner peels the
staging block into a single file line, parks the queue along the top
wall, and then delivers robots right-to-left onto the goal cells.
"""
from pathlib import Path

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from swarmshape.assembly import Zones, arrange_n_robots, delivery_order, \
    grid_replay, sort_goals, verify_assembly
from swarmshape.planning import total_distance

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

# a chunky "U" of 14 cells
cells = [(c, 6 + r) for c in (4, 9) for r in range(5)] + \
        [(4 + i, 6) for i in range(1, 5)]
goals = sort_goals(cells)
zones = Zones.for_goals(goals, clearance=1, staging_w=7)
seq = arrange_n_robots(zones)
states = grid_replay(zones, seq)
assert verify_assembly(zones, seq)

paths = np.stack([st.positions for st in states])  # (steps, n, 2)
order = delivery_order(zones)

fig, axes = plt.subplots(1, 3, figsize=(14, 4.2), sharey=True)
snaps = (0, len(states) // 3, len(states) - 1)
for ax, k in zip(axes, snaps):
    ax.add_patch(plt.Rectangle((0.5, 0.5), zones.width, zones.height,
                               fill=False, color="k"))
    for g in zones.goals:
        ax.add_patch(plt.Rectangle((g[0] - 0.5, g[1] - 0.5), 1, 1,
                                   color="#cccccc"))
    ax.scatter(paths[k, :, 0], paths[k, :, 1], s=26, color="#4878cf",
               zorder=3)
    ax.set_aspect("equal")
    ax.set_title(f"after {k} of {len(seq)} commands")
fig.tight_layout()
fig.savefig(OUT / "n_robot_snapshots.png", dpi=130)
print("wrote", OUT / "n_robot_snapshots.png")

# one robot's full tour: staging -> queue -> parked -> delivered
fig, ax = plt.subplots(figsize=(8, 3.6))
ax.add_patch(plt.Rectangle((0.5, 0.5), zones.width, zones.height,
                           fill=False, color="k"))
for g in zones.goals:
    ax.add_patch(plt.Rectangle((g[0] - 0.5, g[1] - 0.5), 1, 1,
                               color="#cccccc"))
rid = order[len(order) // 2]
ax.plot(paths[:, rid, 0], paths[:, rid, 1], "-", color="#d65f5f", lw=1)
ax.plot(*paths[0, rid], "s", color="#d65f5f", mfc="none", mew=2, ms=9)
ax.plot(*paths[-1, rid], "*", color="#d65f5f", ms=15)
ax.set_aspect("equal")
ax.set_title(f"tour of robot {rid} (square: start, star: goal)")
fig.tight_layout()
fig.savefig(OUT / "n_robot_tour.png", dpi=130)
print("wrote", OUT / "n_robot_tour.png")

print(f"{zones.n} robots, {len(seq)} commands, "
      f"total travel {total_distance(seq):.0f} cells, all goals exact")
