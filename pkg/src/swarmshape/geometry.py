"""Planar regions and their first/second area moments.

Two independent routes to the same numbers live here: exact polygon
moments via the divergence theorem, and rejection-sampling Monte Carlo
for regions only available as a membership predicate.  Everything else
in the package checks itself against one of these.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRegion, DomainError, RegionTooThin

_AREA_TOL = 1e-12
_VAR_TOL = 1e-12


@dataclass(frozen=True)
class Moments:
    """First and second central moments of a planar density."""

    mean_x: float
    mean_y: float
    var_x: float
    var_y: float
    cov_xy: float
    corr: float
    degenerate: bool = False

    @property
    def mean(self):
        return np.array([self.mean_x, self.mean_y])

    @property
    def cov_matrix(self):
        return np.array([[self.var_x, self.cov_xy],
                         [self.cov_xy, self.var_y]])


def _finish_moments(mean_x, mean_y, var_x, var_y, cov_xy) -> Moments:
    # Clamp tiny negative variances from cancellation; flag collapsed axes.
    var_x = max(float(var_x), 0.0)
    var_y = max(float(var_y), 0.0)
    degenerate = var_x <= _VAR_TOL or var_y <= _VAR_TOL
    corr = 0.0 if degenerate else float(cov_xy) / np.sqrt(var_x * var_y)
    return Moments(float(mean_x), float(mean_y), var_x, var_y,
                   float(cov_xy), corr, degenerate)


def _clean_ring(vertices):
    v = np.atleast_2d(np.asarray(vertices, dtype=float))
    if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
        raise DegenerateRegion("need at least 3 vertices of shape (n, 2)")
    if not np.all(np.isfinite(v)):
        raise DegenerateRegion("non-finite vertex")
    # Drop consecutive duplicates, including the wrap-around pair.
    keep = np.any(np.abs(v - np.roll(v, 1, axis=0)) > 1e-14, axis=1)
    v = v[keep]
    if v.shape[0] < 3:
        raise DegenerateRegion("fewer than 3 distinct vertices")
    return v


def polygon_area(vertices) -> float:
    """Signed shoelace area; positive for counter-clockwise rings."""
    v = np.atleast_2d(np.asarray(vertices, dtype=float))
    x, y = v[:, 0], v[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return 0.5 * float(np.sum(x * yn - xn * y))


def _segments_cross(p1, p2, p3, p4):
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


class Polygon:
    """Simple polygon, stored counter-clockwise with duplicates removed."""

    def __init__(self, vertices):
        v = _clean_ring(vertices)
        area = polygon_area(v)
        if abs(area) < _AREA_TOL:
            raise DegenerateRegion(f"area {area:g} below tolerance")
        if area < 0:
            v = v[::-1].copy()
            area = -area
        # Proper-crossing check is quadratic; skip for very large rings.
        n = v.shape[0]
        if n <= 200:
            for i in range(n):
                a, b = v[i], v[(i + 1) % n]
                for j in range(i + 1, n):
                    if j == i or (j + 1) % n == i or (i + 1) % n == j:
                        continue
                    if _segments_cross(a, b, v[j], v[(j + 1) % n]):
                        raise DegenerateRegion("self-intersecting ring")
        self.vertices = v
        self.area = float(area)

    def __repr__(self):
        return f"Polygon({self.vertices.shape[0]} vertices, area={self.area:.6g})"


def polygon_moments(polygon) -> Moments:
    """Exact uniform-density moments of a polygon via the divergence theorem.

    Accepts a Polygon or a raw vertex array.  Second moments are
    accumulated about the centroid to keep cancellation in check.
    """
    if not isinstance(polygon, Polygon):
        polygon = Polygon(polygon)
    v = polygon.vertices
    x, y = v[:, 0], v[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    w = x * yn - xn * y
    area = 0.5 * np.sum(w)
    cx = np.sum((x + xn) * w) / (6.0 * area)
    cy = np.sum((y + yn) * w) / (6.0 * area)

    # Shift to the centroid, then accumulate the quadratic terms.
    x, y = x - cx, y - cy
    xn, yn = xn - cx, yn - cy
    w = x * yn - xn * y
    var_x = np.sum((x * x + x * xn + xn * xn) * w) / (12.0 * area)
    var_y = np.sum((y * y + y * yn + yn * yn) * w) / (12.0 * area)
    cov = np.sum((x * yn + 2 * x * y + 2 * xn * yn + xn * y) * w) / (24.0 * area)
    return _finish_moments(cx, cy, var_x, var_y, cov)


def moments_of_points(points) -> Moments:
    """Population moments of a finite point set (ddof = 0)."""
    p = np.atleast_2d(np.asarray(points, dtype=float))
    if p.ndim != 2 or p.shape[1] != 2 or p.shape[0] == 0:
        raise DomainError("points must have shape (n, 2) with n >= 1")
    mean = p.mean(axis=0)
    d = p - mean
    var_x = float(np.mean(d[:, 0] ** 2))
    var_y = float(np.mean(d[:, 1] ** 2))
    cov = float(np.mean(d[:, 0] * d[:, 1]))
    return _finish_moments(mean[0], mean[1], var_x, var_y, cov)


def monte_carlo_moments(inside, bbox, n_samples=1_000_000, seed=0) -> Moments:
    """Rejection-sampled moments of ``{p : inside(p)}`` within ``bbox``.

    ``inside`` must accept an (m, 2) array and return a boolean mask of
    length m.  Uses a counter-based generator so a (seed, n_samples)
    pair always reproduces the same estimate.
    """
    if n_samples < 10_000:
        raise DomainError("n_samples below 10000 gives useless estimates")
    xmin, ymin, xmax, ymax = map(float, bbox)
    if not (xmax > xmin and ymax > ymin):
        raise DomainError("empty bounding box")

    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    lo = np.array([xmin, ymin])
    span = np.array([xmax - xmin, ymax - ymin])

    accepted = []
    n_accepted = 0
    remaining = int(n_samples)
    while remaining > 0:
        m = min(remaining, 1 << 18)
        pts = lo + rng.random((m, 2)) * span
        mask = np.asarray(inside(pts), dtype=bool)
        if mask.shape != (m,):
            raise DomainError("inside() must return a length-m boolean mask")
        hit = pts[mask]
        if hit.size:
            accepted.append(hit)
            n_accepted += hit.shape[0]
        remaining -= m

    rate = n_accepted / float(n_samples)
    if rate < 1e-3:
        raise RegionTooThin(f"acceptance rate {rate:.2e}; shrink the bbox")
    return moments_of_points(np.concatenate(accepted, axis=0))
