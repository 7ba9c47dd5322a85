"""Closed-loop runs, gait analysis, parametric sweeps and artefact export."""

from .config import (
    GeometricController,
    NoiseSpec,
    OptimController,
    SimConfig,
    SimulationError,
    StraightLineGait,
    SweepSpec,
)
from .gait import GaitRow, distance_vs_sweep_angle, gait_table, steps_vs_sweep_angle
from .runner import RunLog, RunMetrics, compute_metrics, run_gait, run_simulation
from .sweep import cell_key, cell_seed, run_sweep

__all__ = [
    "GaitRow",
    "GeometricController",
    "NoiseSpec",
    "OptimController",
    "RunLog",
    "RunMetrics",
    "SimConfig",
    "SimulationError",
    "StraightLineGait",
    "SweepSpec",
    "cell_key",
    "cell_seed",
    "compute_metrics",
    "distance_vs_sweep_angle",
    "gait_table",
    "run_gait",
    "run_simulation",
    "run_sweep",
    "steps_vs_sweep_angle",
]
