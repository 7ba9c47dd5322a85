from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Union

from ..controllers import GaitParams, GeometricGains, OptimGains
from ..kinematics import RobotGeometry, RobotState
from ..trajectories import PathSpec


class SimulationError(RuntimeError):
    """A run could not be completed (controller abort, gait never finished)."""


@dataclass(frozen=True)
class GeometricController:
    gains: GeometricGains
    name = "geometric"


@dataclass(frozen=True)
class OptimController:
    gains: OptimGains
    name = "optimization"


@dataclass(frozen=True)
class StraightLineGait:
    goal_distance: float
    omega_nominal: float
    name = "straight_line_gait"

    def __post_init__(self) -> None:
        if not self.goal_distance > 0:
            raise ValueError("goal_distance must be positive")
        if not self.omega_nominal > 0:
            raise ValueError("omega_nominal must be positive")


Controller = Union[GeometricController, OptimController, StraightLineGait]


@dataclass(frozen=True)
class NoiseSpec:
    """Synthetic disturbances; off by default.

    ``omega_jitter_std`` is added to the commanded rate once per control
    tick, ``pivot_slip_std`` shifts the centre (per axis) at every pivot
    switch.
    """

    omega_jitter_std: float = 0.0
    pivot_slip_std: float = 0.0

    def __post_init__(self) -> None:
        if self.omega_jitter_std < 0 or self.pivot_slip_std < 0:
            raise ValueError("noise standard deviations must be >= 0")

    @property
    def active(self) -> bool:
        return self.omega_jitter_std > 0 or self.pivot_slip_std > 0


@dataclass(frozen=True)
class SimConfig:
    """One closed-loop run.

    ``dt_control`` defaults to ``dt_path`` and ``dt_integration`` to
    ``dt_control``; both must divide evenly into the next coarser step.
    ``path`` may be omitted for the straight-line gait.
    """

    geometry: RobotGeometry
    initial_state: RobotState
    controller: Controller
    gait: GaitParams
    t_f: float | None
    path: PathSpec | None = None
    dt_path: float = 0.1
    dt_control: float | None = None
    dt_integration: float | None = None
    integrator: str = "arc"
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.integrator not in ("arc", "euler"):
            raise ValueError(f"integrator must be 'arc' or 'euler', got {self.integrator!r}")
        if not self.dt_path > 0:
            raise ValueError("dt_path must be positive")
        if self.t_f is not None and not self.t_f > 0:
            raise ValueError("t_f must be positive")
        if self.t_f is None and not isinstance(self.controller, StraightLineGait):
            raise ValueError("t_f is required for tracking controllers")
        if not isinstance(self.controller, StraightLineGait):
            if self.path is None:
                raise ValueError("tracking controllers need a path")
            ratio = self.dt_path / self.control_step
            if self.control_step > self.dt_path * (1 + 1e-12) or abs(ratio - round(ratio)) > 1e-9:
                raise ValueError("dt_control must divide dt_path")
        else:
            if self.gait.desired_sweep is None:
                raise ValueError("the straight-line gait needs desired_sweep")
        if self.integration_step > self.control_step * (1 + 1e-12):
            raise ValueError("dt_integration must not exceed dt_control")
        if not isinstance(self.controller, StraightLineGait):
            n = self.control_step / self.integration_step
            if abs(n - round(n)) > 1e-9:
                raise ValueError("dt_integration must divide dt_control")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    @property
    def control_step(self) -> float:
        return self.dt_path if self.dt_control is None else self.dt_control

    @property
    def integration_step(self) -> float:
        return self.control_step if self.dt_integration is None else self.dt_integration

    @property
    def substeps(self) -> int:
        return int(round(self.control_step / self.integration_step))

    def with_(self, **changes) -> "SimConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class SweepSpec:
    """Grid over sweep angle, path step and tilt angle, per controller."""

    base: SimConfig
    sweep_angles: tuple[float, ...]
    dt_paths: tuple[float, ...]
    tilt_angles: tuple[float, ...]
    controllers: tuple[tuple[str, Controller], ...]
    repetitions: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("sweep_angles", "dt_paths", "tilt_angles", "controllers"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be non-empty")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        for a in self.sweep_angles:
            if not 0 < a < 2 * math.pi:
                raise ValueError("sweep angles must lie in (0, 2*pi)")
