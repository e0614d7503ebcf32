"""How much fill gives the widest settled swarm in a round arena?

In a circular arena the settled region is a chord segment, so the
spread of the swarm depends only on how full the arena is and where
the force points.  Two fill levels are special: one maximizes the
spread across the force direction, a slightly emptier one maximizes
the shear (the xy covariance) when the force points into a diagonal.
This script traces both curves and marks the peaks.
"""
from pathlib import Path
import math

import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from swarmshape.settling import CircleFillSpec, circle_moments

OUT = Path(__file__).parent / "out"
OUT.mkdir(exist_ok=True)

hs = np.linspace(0.02, 1.98, 393)

# force straight up: cross-force spread is the x variance
up = [circle_moments(CircleFillSpec(math.pi / 2, float(h))) for h in hs]
# force into the upper-left diagonal: shear shows up as cov_xy
diag = [circle_moments(CircleFillSpec(3 * math.pi / 4, float(h))) for h in hs]

var_across = np.array([m.var_x for m in up])
shear = np.array([m.cov_xy for m in diag])
h_var = hs[var_across.argmax()]
h_cov = hs[shear.argmax()]

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.4))
ax1.plot(hs, var_across, color="#4878cf")
ax1.axvline(h_var, color="k", ls=":", lw=1)
ax1.annotate(f"peak at h={h_var:.2f}", (h_var, var_across.max()),
             textcoords="offset points", xytext=(8, -12))
ax1.set_xlabel("fill height h (arena diameter = 2)")
ax1.set_ylabel("variance across the force")
ax1.set_title("force pointing up")

ax2.plot(hs, shear, color="#d65f5f")
ax2.axvline(h_cov, color="k", ls=":", lw=1)
ax2.annotate(f"peak at h={h_cov:.2f}", (h_cov, shear.max()),
             textcoords="offset points", xytext=(8, -12))
ax2.set_xlabel("fill height h")
ax2.set_ylabel("cov xy")
ax2.set_title("force into the diagonal")
fig.tight_layout()
fig.savefig(OUT / "circle_extrema.png", dpi=130)
print("wrote", OUT / "circle_extrema.png")

# -----------------------------
# The two extremal segments, drawn
# -----------------------------
fig, axes = plt.subplots(1, 2, figsize=(9, 4.6))
for ax, (h, beta, label) in zip(axes, ((h_var, math.pi / 2, "widest"),
                                       (h_cov, 3 * math.pi / 4, "max shear"))):
    th = np.linspace(0, 2 * math.pi, 256)
    ax.plot(np.cos(th), np.sin(th), "k", lw=1)
    # the settled segment: points at least (1 - h) along the force axis
    c, s = math.cos(beta), math.sin(beta)
    xx, yy = np.meshgrid(np.linspace(-1, 1, 400), np.linspace(-1, 1, 400))
    mask = (xx * xx + yy * yy <= 1) & (xx * c + yy * s >= 1 - h)
    ax.contourf(xx, yy, mask.astype(float), levels=[0.5, 1.5],
                colors=["#4878cf"], alpha=0.6)
    ax.annotate("", xy=(0.45 * c, 0.45 * s), xytext=(0, 0),
                arrowprops=dict(arrowstyle="->", lw=2))
    ax.set_aspect("equal")
    ax.set_title(f"{label}: h={h:.2f}")
    ax.set_xticks([])
    ax.set_yticks([])
fig.tight_layout()
fig.savefig(OUT / "circle_segments.png", dpi=130)
print("wrote", OUT / "circle_segments.png")

print(f"widest swarm at fill height {h_var:.3f} "
      f"(variance {var_across.max():.4f})")
print(f"strongest shear at fill height {h_cov:.3f} "
      f"(cov {shear.max():.4f})")
