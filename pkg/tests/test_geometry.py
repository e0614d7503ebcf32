"""Moment engines: exact polygon integrals vs Monte Carlo sampling."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swarmshape.errors import DegenerateRegion, DomainError, RegionTooThin
from swarmshape.geometry import (
    Moments, Polygon, monte_carlo_moments, moments_of_points,
    polygon_area, polygon_moments,
)

UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


def test_unit_square_moments():
    m = polygon_moments(UNIT_SQUARE)
    assert abs(m.mean_x - 0.5) < 1e-15
    assert abs(m.mean_y - 0.5) < 1e-15
    assert abs(m.var_x - 1 / 12) < 1e-15
    assert abs(m.var_y - 1 / 12) < 1e-15
    assert abs(m.cov_xy) < 1e-15
    assert m.corr == 0.0


def test_right_triangle_moments():
    # Legs on the axes: mean (1/3, 1/3), var 1/18, cov -1/36, corr -1/2.
    m = polygon_moments([(0, 0), (1, 0), (0, 1)])
    assert abs(m.mean_x - 1 / 3) < 1e-15
    assert abs(m.mean_y - 1 / 3) < 1e-15
    assert abs(m.var_x - 1 / 18) < 1e-15
    assert abs(m.var_y - 1 / 18) < 1e-15
    assert abs(m.cov_xy + 1 / 36) < 1e-15
    assert abs(m.corr + 0.5) < 1e-12


def test_vertex_order_invariance():
    m1 = polygon_moments(UNIT_SQUARE)
    m2 = polygon_moments(UNIT_SQUARE[::-1])  # clockwise input
    for f in ("mean_x", "mean_y", "var_x", "var_y", "cov_xy"):
        assert abs(getattr(m1, f) - getattr(m2, f)) < 1e-15


def test_polygon_area_signs():
    assert polygon_area(UNIT_SQUARE) == pytest.approx(1.0)
    assert polygon_area(UNIT_SQUARE[::-1]) == pytest.approx(-1.0)
    assert Polygon(UNIT_SQUARE[::-1]).area == pytest.approx(1.0)


def test_degenerate_rings_rejected():
    with pytest.raises(DegenerateRegion):
        Polygon([(0, 0), (1, 1)])
    with pytest.raises(DegenerateRegion):
        Polygon([(0, 0), (1, 0), (2, 0)])  # collinear, zero area
    with pytest.raises(DegenerateRegion):
        Polygon([(0, 0), (1, 1), (1, 0), (0, 1)])  # bowtie
    with pytest.raises(DegenerateRegion):
        Polygon([(0, 0), (0, 0), (1, 0)])


coord = st.floats(-5, 5)


@given(st.tuples(coord, coord), st.floats(-math.pi, math.pi),
       st.floats(0.1, 3.0))
@settings(max_examples=80, deadline=None)
def test_triangle_rigid_motion_invariance(shift, angle, scale):
    """Variances are rotation-covariant; the trace and det are invariant."""
    base = np.array([(0.0, 0.0), (2.0, 0.1), (0.7, 1.5)])
    m0 = polygon_moments(base)
    c, s = math.cos(angle), math.sin(angle)
    R = np.array([[c, -s], [s, c]])
    moved = scale * base @ R.T + np.asarray(shift)
    m1 = polygon_moments(moved)
    k = scale * scale
    tr0 = (m0.var_x + m0.var_y) * k
    det0 = (m0.var_x * m0.var_y - m0.cov_xy ** 2) * k * k
    assert abs((m1.var_x + m1.var_y) - tr0) < 1e-9 * max(1, tr0)
    assert abs((m1.var_x * m1.var_y - m1.cov_xy ** 2) - det0) < 1e-9 * max(1, det0)
    want_mean = scale * R @ np.array([m0.mean_x, m0.mean_y]) + shift
    assert abs(m1.mean_x - want_mean[0]) < 1e-9
    assert abs(m1.mean_y - want_mean[1]) < 1e-9


def test_monte_carlo_matches_exact_triangle():
    tri = [(0, 0), (1, 0), (0, 1)]
    exact = polygon_moments(tri)
    mc = monte_carlo_moments(
        lambda p: p[:, 0] + p[:, 1] <= 1.0, (0, 0, 1, 1),
        n_samples=1_000_000, seed=3)
    for f in ("mean_x", "mean_y", "var_x", "var_y", "cov_xy"):
        assert abs(getattr(mc, f) - getattr(exact, f)) < 5e-3


def test_monte_carlo_deterministic():
    args = (lambda p: p[:, 0] ** 2 + p[:, 1] ** 2 <= 1.0, (-1, -1, 1, 1))
    a = monte_carlo_moments(*args, n_samples=100_000, seed=42)
    b = monte_carlo_moments(*args, n_samples=100_000, seed=42)
    assert a == b
    c = monte_carlo_moments(*args, n_samples=100_000, seed=43)
    assert c != a


def test_monte_carlo_validation():
    with pytest.raises(DomainError):
        monte_carlo_moments(lambda p: p[:, 0] > 0, (0, 0, 1, 1), n_samples=100)
    with pytest.raises(DomainError):
        monte_carlo_moments(lambda p: p[:, 0] > 0, (1, 0, 0, 1))
    with pytest.raises(RegionTooThin):
        monte_carlo_moments(lambda p: p[:, 0] > 2.0, (0, 0, 1, 1),
                            n_samples=100_000, seed=0)


def test_moments_of_points_population_convention():
    pts = np.array([(0, 0), (1, 0), (1, 1), (0, 1)], dtype=float)
    m = moments_of_points(pts)
    assert m.var_x == pytest.approx(0.25)  # ddof=0, not 1/3
    assert m.var_y == pytest.approx(0.25)
    assert m.cov_xy == pytest.approx(0.0)
    with pytest.raises(DomainError):
        moments_of_points(np.zeros((0, 2)))


def test_coincident_points_degenerate():
    m = moments_of_points(np.zeros((5, 2)))
    assert m.degenerate
    assert m.corr == 0.0


def test_cov_matrix_shape():
    m = polygon_moments(UNIT_SQUARE)
    cm = m.cov_matrix
    assert cm.shape == (2, 2)
    assert cm[0, 1] == cm[1, 0] == m.cov_xy
    np.testing.assert_allclose(m.mean, [0.5, 0.5])
