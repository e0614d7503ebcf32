"""Closed-form statistics of a swarm settled against a boundary.

A large swarm under a constant global force behaves like an
incompressible fluid: it piles up against the boundary in the force
direction ``beta`` with its free surface perpendicular to the force.
Two canonical workspaces are covered: the unit square (swarm area
``A`` as a fraction of the square) and the unit-radius circle
(parameterized by fill height ``h`` measured from the wall).

Convention: ``beta`` is the direction the force points, and the swarm
settles on the side the force points toward; the settled mean lies at
polar angle ``beta`` in the circle case.
"""

import math
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError
from .geometry import Moments, Polygon, _finish_moments, polygon_moments

_TWO_PI = 2.0 * math.pi
_BREAK_TOL = 1e-12


@dataclass(frozen=True)
class SquareFillSpec:
    """Force angle and swarm area for the unit-square workspace."""

    beta: float
    area: float

    def __post_init__(self):
        if not (0.0 < self.area <= 1.0):
            raise DomainError(f"area must be in (0, 1], got {self.area}")
        if not math.isfinite(self.beta):
            raise DomainError("beta must be finite")

    @property
    def beta_normalized(self) -> float:
        return self.beta % _TWO_PI


@dataclass(frozen=True)
class CircleFillSpec:
    """Force angle and fill height for the unit-circle workspace."""

    beta: float
    fill_height: float

    def __post_init__(self):
        if not (0.0 < self.fill_height <= 2.0):
            raise DomainError(f"fill_height must be in (0, 2], got {self.fill_height}")
        if not math.isfinite(self.beta):
            raise DomainError("beta must be finite")


def _case_of(beta: float, area: float):
    """Angular case 1..8 for the settled square region.

    Breakpoints sit at arctan(2A) offsets from the axis directions
    (arctan(2(1-A)) when A > 1/2).  Exactly-on-breakpoint angles take
    the lower case (the table's right-closed intervals).
    """
    t = math.atan(2.0 * area) if area <= 0.5 else math.atan(2.0 * (1.0 - area))
    h = math.pi / 2.0
    bps = [t, h - t, h + t, 2 * h - t, 2 * h + t, 3 * h - t, 3 * h + t, 4 * h - t]
    idx = bisect_left(bps, beta - _BREAK_TOL)
    return (idx % 8) + 1


def square_region(spec: SquareFillSpec) -> Polygon:
    """Polygon occupied by the settled swarm in the unit square.

    The swarm fills ``{p : p . (cos b, sin b) >= c}`` clipped to the
    square, with c set by the area constraint; the closed-form vertex
    lists below alternate triangle/trapezoid for A <= 1/2 and
    notched-square/trapezoid for A > 1/2.
    """
    A = spec.area
    b = spec.beta_normalized
    if A == 1.0:
        return Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])

    case = _case_of(b, A)
    tb = math.tan(b) if case in (1, 2, 4, 5, 6, 8) else 0.0
    ct = (math.cos(b) / math.sin(b)) if case in (3, 7) else 0.0

    if A <= 0.5:
        if case == 1:  # trapezoid on the right wall
            v = [(1, 0), (1, 1), (1 - A - tb / 2, 1), (1 - A + tb / 2, 0)]
        elif case == 2:  # triangle in the top-right corner
            a = math.sqrt(2 * A * tb)
            v = [(1, 1), (1 - a, 1), (1, 1 - 2 * A / a)]
        elif case == 3:  # trapezoid on the top wall
            v = [(1, 1), (0, 1), (0, 1 - A + ct / 2), (1, 1 - A - ct / 2)]
        elif case == 4:  # triangle, top-left
            a = math.sqrt(-2 * A * tb)
            v = [(0, 1), (a, 1), (0, 1 - 2 * A / a)]
        elif case == 5:  # trapezoid on the left wall
            v = [(0, 0), (0, 1), (A - tb / 2, 1), (A + tb / 2, 0)]
        elif case == 6:  # triangle, bottom-left
            a = math.sqrt(2 * A * tb)
            v = [(0, 0), (0, 2 * A / a), (a, 0)]
        elif case == 7:  # trapezoid on the bottom wall
            v = [(0, 0), (1, 0), (1, A - ct / 2), (0, A + ct / 2)]
        else:  # triangle, bottom-right
            a = math.sqrt(-2 * A * tb)
            v = [(1, 0), (1 - a, 0), (1, 2 * A / a)]
    else:
        E = 1.0 - A  # empty area in the opposite corner
        if case == 1:
            v = [(1, 0), (1, 1), (E - tb / 2, 1), (E + tb / 2, 0)]
        elif case == 2:  # square minus bottom-left triangle
            a = math.sqrt(2 * E * tb)
            v = [(1, 0), (1, 1), (0, 1), (0, 2 * E / a), (a, 0)]
        elif case == 3:
            v = [(1, 1), (0, 1), (0, E + ct / 2), (1, E - ct / 2)]
        elif case == 4:  # square minus bottom-right triangle
            a = math.sqrt(-2 * E * tb)
            v = [(1, 1), (0, 1), (0, 0), (1 - a, 0), (1, 2 * E / a)]
        elif case == 5:
            v = [(0, 0), (0, 1), (A - tb / 2, 1), (A + tb / 2, 0)]
        elif case == 6:  # square minus top-right triangle
            a = math.sqrt(2 * E * tb)
            v = [(1, 0), (0, 0), (0, 1), (1 - a, 1), (1, 1 - 2 * E / a)]
        elif case == 7:
            v = [(0, 0), (1, 0), (1, A - ct / 2), (0, A + ct / 2)]
        else:  # square minus top-left triangle
            a = math.sqrt(-2 * E * tb)
            v = [(0, 0), (1, 0), (1, 1), (a, 1), (0, 1 - 2 * E / a)]
    # All vertices lie on the square's walls in exact arithmetic; clamp
    # away ~1e-13 float noise at case breakpoints so the ring stays simple.
    return Polygon(np.clip(np.asarray(v, dtype=float), 0.0, 1.0))


def square_mean_x(spec: SquareFillSpec) -> float:
    """Piecewise closed form for the settled mean x in the unit square.

    Kept independent of the polygon route so the two can cross-check
    each other; radicand signs follow the branch that is nonnegative
    over each angular case.
    """
    A = spec.area
    b = spec.beta_normalized
    if A == 1.0:
        return 0.5
    case = _case_of(b, A)
    tb = math.tan(b)
    if case in (3, 7):
        ct = math.cos(b) / math.sin(b)
        return 0.5 + ct / (12 * A) if case == 3 else 0.5 - ct / (12 * A)
    if case == 1:
        return 1.0 - A / 2 - tb * tb / (24 * A)
    if case == 5:
        return A / 2 + tb * tb / (24 * A)
    if A <= 0.5:
        root = math.sqrt(2 * A * tb) if case in (2, 6) else math.sqrt(-2 * A * tb)
        return {2: 1 - root / 3, 4: root / 3, 6: root / 3, 8: 1 - root / 3}[case]
    E = 1.0 - A
    root = math.sqrt(2 * E * tb) if case in (2, 6) else math.sqrt(-2 * E * tb)
    if case == 2:
        return (3 - 2 * root * E) / (6 * A)
    if case == 4:
        return (2 * root * E + 6 * A - 3) / (6 * A)
    if case == 6:
        return (2 * root * E + 6 * A - 3) / (6 * A)
    return (3 - 2 * root * E) / (6 * A)


def square_moments(spec: SquareFillSpec) -> Moments:
    """Full settled-swarm moments via the exact polygon engine."""
    return polygon_moments(square_region(spec))


def circle_chord_area(h) -> float:
    """Area cut from the unit disc by a chord at depth h from the wall."""
    if not (0.0 <= h <= 2.0):
        raise DomainError(f"fill height must be in [0, 2], got {h}")
    return math.acos(1.0 - h) - (1.0 - h) * math.sqrt((2.0 - h) * h)


def circle_fill_height(area) -> float:
    """Inverse of circle_chord_area; round-trips to 1e-10 or better."""
    if not (0.0 <= area <= math.pi):
        raise DomainError(f"area must be in [0, pi], got {area}")
    if area == 0.0:
        return 0.0
    if area == math.pi:
        return 2.0
    return brentq(lambda h: circle_chord_area(h) - area, 0.0, 2.0, xtol=1e-14)


def circle_mean_radius(h) -> float:
    """Distance of the settled mean from the circle center."""
    if not (0.0 < h <= 2.0):
        raise DomainError(f"fill height must be in (0, 2], got {h}")
    w = (2.0 - h) * h
    return 2.0 * w ** 1.5 / (3.0 * circle_chord_area(h))


def _circle_axis_variances(h):
    # Variances with the force along +x; note the arcsin in the x term
    # and arccos in the y term - they are not interchangeable.
    area = circle_chord_area(h)
    sx2 = (64.0 * (h - 2.0) ** 3 * h ** 3
           + 9.0 * area * (math.sin(4.0 * math.asin(1.0 - h))
                           + 4.0 * math.acos(1.0 - h))) / (144.0 * area * area)
    sy2 = (12.0 * math.acos(1.0 - h) - 8.0 * math.sin(2.0 * math.acos(1.0 - h))
           + math.sin(4.0 * math.acos(1.0 - h))) / (48.0 * area)
    return sx2, sy2


def circle_moments(spec: CircleFillSpec) -> Moments:
    """Settled moments in the unit circle for any force angle.

    The force-aligned frame has a diagonal covariance; rotating it by
    beta gives the workspace-frame matrix, so the off-diagonal term is
    zero exactly when beta is a multiple of pi/2.
    """
    h = spec.fill_height
    r = circle_mean_radius(h)
    sx2, sy2 = _circle_axis_variances(h)
    c, s = math.cos(spec.beta), math.sin(spec.beta)
    var_x = sx2 * c * c + sy2 * s * s
    var_y = sx2 * s * s + sy2 * c * c
    cov = (sx2 - sy2) * s * c
    return _finish_moments(r * c, r * s, var_x, var_y, cov)


def sweep_statistics(workspace, fills, beta_samples):
    """Moments over a (fill, beta) grid, one row per combination.

    ``workspace`` is "square" (fills are areas) or "circle" (fills are
    heights); beta runs over ``beta_samples`` equally spaced angles in
    [0, 2*pi).
    """
    if len(fills) == 0 or beta_samples < 1:
        raise DomainError("need at least one fill value and one beta sample")
    betas = np.arange(beta_samples) * (_TWO_PI / beta_samples)
    rows = []
    for fill in fills:
        for beta in betas:
            if workspace == "square":
                m = square_moments(SquareFillSpec(float(beta), float(fill)))
            elif workspace == "circle":
                m = circle_moments(CircleFillSpec(float(beta), float(fill)))
            else:
                raise DomainError(f"unknown workspace {workspace!r}")
            rows.append({
                "fill": float(fill), "beta": float(beta),
                "mean_x": m.mean_x, "mean_y": m.mean_y,
                "var_x": m.var_x, "var_y": m.var_y,
                "cov_xy": m.cov_xy, "corr": m.corr,
            })
    return rows
