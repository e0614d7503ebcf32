"""Shaping uniformly-actuated planar swarms with walls and wall friction."""

from .assembly import Zones, arrange_n_robots, grid_replay, sort_goals, \
    verify_assembly
from .covariance import ControllerState, CovarianceGoal, controller_step, \
    goal_band, run_closed_loop
from .errors import SwarmShapeError
from .friction import BoundaryLayerSpec, FrictionParams, \
    boundary_layer_velocity, forward_force
from .geometry import Moments, Polygon, moments_of_points, \
    monte_carlo_moments, polygon_moments
from .gridsim import GridState, GridWorld, apply_grid_sequence
from .kinematics import MoveCommand, MoveSequence, RobotState, Workspace, \
    apply_sequence
from .physics import ControlInput, DiscSwarm, SimParams, \
    covariance_excursion, friction_sweep_levels, hex_packed_swarm, \
    run_open_loop, run_program, swarm_stats
from .planning import TwoRobotTask, arrange_two_robots, plan_from_text, \
    plan_to_text, spacing_rounds, total_distance
from .settling import CircleFillSpec, SquareFillSpec, circle_moments, \
    square_moments, square_region, sweep_statistics

__version__ = "0.1.0"

__all__ = [
    "BoundaryLayerSpec", "CircleFillSpec", "ControlInput", "ControllerState",
    "CovarianceGoal", "DiscSwarm", "FrictionParams", "GridState", "GridWorld",
    "Moments", "MoveCommand", "MoveSequence", "Polygon", "RobotState",
    "SimParams", "SquareFillSpec", "SwarmShapeError", "TwoRobotTask",
    "Workspace", "Zones", "apply_grid_sequence", "apply_sequence",
    "arrange_n_robots", "arrange_two_robots", "boundary_layer_velocity",
    "circle_moments", "controller_step", "covariance_excursion",
    "forward_force", "friction_sweep_levels", "goal_band", "grid_replay",
    "hex_packed_swarm", "moments_of_points", "monte_carlo_moments",
    "plan_from_text", "plan_to_text", "polygon_moments", "run_closed_loop",
    "run_open_loop", "run_program", "sort_goals", "spacing_rounds",
    "square_moments", "square_region", "sweep_statistics", "swarm_stats",
    "total_distance", "verify_assembly",
]
