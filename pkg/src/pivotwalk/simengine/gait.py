"""Straight-line gait analysis over a grid of sweep angles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from ..controllers import GaitParams
from .config import SimConfig, SimulationError, StraightLineGait
from .runner import run_gait


@dataclass(frozen=True)
class GaitRow:
    sweep_angle: float
    n_steps: int
    steps_fractional: float
    travel_distance: float


def _check_angles(angles: Iterable[float]) -> list[float]:
    out = [float(a) for a in angles]
    if not out:
        raise ValueError("angle grid is empty")
    for a in out:
        if not 0.0 < a < 2.0 * math.pi:
            raise ValueError(f"sweep angle {math.degrees(a):g} deg is outside (0, 360) deg")
    return out


def gait_table(base: SimConfig, angles: Iterable[float], backend: str | None = None) -> list[GaitRow]:
    """Walk ``goal_distance`` once per sweep angle.

    ``steps_fractional`` adds the completed share of the unfinished sweep to
    the switch count, which resolves differences that the integer count
    hides on fine grids.
    """
    if not isinstance(base.controller, StraightLineGait):
        raise ValueError("gait analysis needs the straight-line gait controller")
    rows = []
    for a in _check_angles(angles):
        cfg = base.with_(gait=GaitParams(sweep_angle=a, tilt_angle=base.gait.tilt_angle, desired_sweep=a))
        sw, frac, travel, _, done, _ = run_gait(cfg, record=False, backend=backend)
        if not done:
            raise SimulationError(f"gait at {math.degrees(a):g} deg stopped before the goal")
        rows.append(GaitRow(a, int(sw), float(frac), float(travel)))
    return rows


def steps_vs_sweep_angle(base: SimConfig, angles: Iterable[float], backend: str | None = None):
    return [(r.sweep_angle, r.n_steps, r.steps_fractional) for r in gait_table(base, angles, backend)]


def distance_vs_sweep_angle(base: SimConfig, angles: Iterable[float], backend: str | None = None):
    return [(r.sweep_angle, r.travel_distance) for r in gait_table(base, angles, backend)]
