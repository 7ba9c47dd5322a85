"""Simulation and control of pivot-walking magnetic millirobots."""

from ._backend import NAME as BACKEND
from .controllers import (
    ControllerState,
    GaitParams,
    GeometricGains,
    OptimGains,
    cost,
    geometric_control_step,
    grad_omega,
    grad_sigma,
    optim_control_step,
    pivot_selection,
    straight_line_gait_step,
    tracking_error,
)
from .kinematics import (
    ControlInput,
    PivotPair,
    RobotGeometry,
    RobotState,
    pivot_positions,
    rotation_matrix,
    state_derivative,
    step_euler,
    step_exact_arc,
)
from .trajectories import DesiredState, EightShape, PathSampling, StraightLine, Waypoints

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ControlInput",
    "ControllerState",
    "DesiredState",
    "EightShape",
    "GaitParams",
    "GeometricGains",
    "OptimGains",
    "PathSampling",
    "PivotPair",
    "RobotGeometry",
    "RobotState",
    "StraightLine",
    "Waypoints",
    "cost",
    "geometric_control_step",
    "grad_omega",
    "grad_sigma",
    "optim_control_step",
    "pivot_positions",
    "pivot_selection",
    "rotation_matrix",
    "state_derivative",
    "step_euler",
    "step_exact_arc",
    "straight_line_gait_step",
    "tracking_error",
]
