"""Planar kinematics of a two-pivot walking robot.

The body is a segment of length ``L`` centred at ``(x, y)`` with heading
``theta``. At any time one end is pinned to the ground (pivot A for
``sigma = +1``, pivot B for ``sigma = -1``) and the body rotates about it at
rate ``omega``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _pykernels as _k


def _check_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class RobotState:
    """Pose of the body centre. ``theta`` is accumulated, never wrapped."""

    x: float
    y: float
    theta: float

    def __post_init__(self) -> None:
        _check_finite("state", self.x, self.y, self.theta)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.theta)


@dataclass(frozen=True)
class RobotGeometry:
    length: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.length) and self.length > 0):
            raise ValueError(f"robot length must be positive and finite, got {self.length!r}")

    @property
    def half(self) -> float:
        return 0.5 * self.length


@dataclass(frozen=True)
class ControlInput:
    sigma: int
    omega: float

    def __post_init__(self) -> None:
        if self.sigma not in (-1, 1):
            raise ValueError(f"sigma must be +1 or -1, got {self.sigma!r}")
        _check_finite("omega", self.omega)


@dataclass(frozen=True)
class PivotPair:
    a: tuple[float, float]
    b: tuple[float, float]

    def active(self, sigma: int) -> tuple[float, float]:
        return self.a if sigma > 0 else self.b


def rotation_matrix(theta: float) -> np.ndarray:
    """Inertial-to-body rotation for heading ``theta``."""
    _check_finite("theta", theta)
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])


def state_derivative(
    state: RobotState, inp: ControlInput, geom: RobotGeometry
) -> tuple[float, float, float]:
    v = geom.half * inp.sigma * inp.omega
    return (v * math.cos(state.theta), v * math.sin(state.theta), inp.omega)


def pivot_positions(state: RobotState, geom: RobotGeometry) -> PivotPair:
    h = geom.half
    s, c = math.sin(state.theta), math.cos(state.theta)
    return PivotPair(
        a=(state.x - h * s, state.y + h * c),
        b=(state.x + h * s, state.y - h * c),
    )


def _check_dt(dt: float) -> None:
    if not (math.isfinite(dt) and dt > 0):
        raise ValueError(f"dt must be positive, got {dt!r}")


def step_exact_arc(
    state: RobotState, inp: ControlInput, geom: RobotGeometry, dt: float
) -> RobotState:
    """Rotate the centre about the active pivot by ``omega * dt``."""
    _check_dt(dt)
    return RobotState(*_k.arc_step(state.x, state.y, state.theta, inp.sigma, inp.omega, dt, geom.half))


def step_euler(
    state: RobotState, inp: ControlInput, geom: RobotGeometry, dt: float
) -> RobotState:
    _check_dt(dt)
    return RobotState(*_k.euler_step(state.x, state.y, state.theta, inp.sigma, inp.omega, dt, geom.half))


INTEGRATORS = {"arc": step_exact_arc, "euler": step_euler}


def wrap_angle(theta: float) -> float:
    """Map to [-pi, pi) for display."""
    return _k.wrap_near(theta, 0.0)
