"""Time-parameterised reference paths."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from ._pykernels import wrap_near


class HeadingUndefined(ValueError):
    """The reference velocity vanishes, so no tangent heading exists."""


class PathRangeError(ValueError):
    pass


@dataclass(frozen=True)
class DesiredState:
    x_d: float
    y_d: float
    vx_d: float
    vy_d: float
    theta_d: float | None = None


@dataclass(frozen=True)
class EightShape:
    """``x = -amp_x sin(freq_x t)``, ``y = -amp_y cos(freq_y t)``."""

    amp_x: float
    amp_y: float
    freq_x: float
    freq_y: float

    def __post_init__(self) -> None:
        if min(self.amp_x, self.amp_y) <= 0 or min(self.freq_x, self.freq_y) <= 0:
            raise ValueError("eight-shape amplitudes and frequencies must be positive")

    def position(self, t):
        return -self.amp_x * np.sin(self.freq_x * t), -self.amp_y * np.cos(self.freq_y * t)

    def velocity(self, t):
        return (
            -self.amp_x * self.freq_x * np.cos(self.freq_x * t),
            self.amp_y * self.freq_y * np.sin(self.freq_y * t),
        )


@dataclass(frozen=True)
class StraightLine:
    """Constant-speed segment that stops after ``length``."""

    origin: tuple[float, float]
    heading: float
    length: float
    speed: float

    def __post_init__(self) -> None:
        if self.length <= 0 or self.speed <= 0:
            raise ValueError("straight line length and speed must be positive")

    def _s(self, t):
        return np.clip(self.speed * np.asarray(t, dtype=float), 0.0, self.length)

    def position(self, t):
        s = self._s(t)
        return self.origin[0] + s * math.cos(self.heading), self.origin[1] + s * math.sin(self.heading)

    def velocity(self, t):
        moving = np.where((np.asarray(t) >= 0) & (self.speed * np.asarray(t) < self.length), self.speed, 0.0)
        return moving * math.cos(self.heading), moving * math.sin(self.heading)


@dataclass(frozen=True)
class Waypoints:
    """Linear interpolation through ``(t, x, y)`` samples."""

    t: tuple[float, ...]
    x: tuple[float, ...]
    y: tuple[float, ...]

    def __post_init__(self) -> None:
        if not (len(self.t) == len(self.x) == len(self.y)) or len(self.t) < 2:
            raise ValueError("waypoints need at least two (t, x, y) samples")
        if any(b <= a for a, b in zip(self.t, self.t[1:])):
            raise ValueError("waypoint times must be strictly increasing")

    def _check(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if np.any(t < self.t[0]) or np.any(t > self.t[-1]):
            raise PathRangeError(f"t outside waypoint span [{self.t[0]}, {self.t[-1]}]")
        return t

    def position(self, t):
        t = self._check(t)
        return np.interp(t, self.t, self.x), np.interp(t, self.t, self.y)

    def velocity(self, t):
        t = self._check(t)
        ts = np.asarray(self.t)
        seg = np.clip(np.searchsorted(ts, t, side="right") - 1, 0, len(ts) - 2)
        dt = ts[seg + 1] - ts[seg]
        xs, ys = np.asarray(self.x), np.asarray(self.y)
        return (xs[seg + 1] - xs[seg]) / dt, (ys[seg + 1] - ys[seg]) / dt


PathSpec = Union[EightShape, StraightLine, Waypoints]


@dataclass(frozen=True)
class PathSampling:
    t0: float
    tf: float
    dt_path: float

    def __post_init__(self) -> None:
        if not self.t0 < self.tf:
            raise ValueError("sampling needs t0 < tf")
        if not self.dt_path > 0:
            raise ValueError("dt_path must be positive")

    def times(self) -> np.ndarray:
        n = int(math.floor((self.tf - self.t0) / self.dt_path + 1e-9)) + 1
        return self.t0 + self.dt_path * np.arange(n)


def _anchor(spec: PathSpec) -> float:
    # branch centre used when no reference heading is supplied
    if isinstance(spec, StraightLine):
        return spec.heading
    vx, vy = spec.velocity(spec.t[0] if isinstance(spec, Waypoints) else 0.0)
    return math.atan2(float(vy), float(vx))


def eval_path(spec: PathSpec, t: float) -> DesiredState:
    x, y = spec.position(t)
    vx, vy = spec.velocity(t)
    return DesiredState(float(x), float(y), float(vx), float(vy))


def desired_heading(spec: PathSpec, t: float, reference: float | None = None) -> float:
    """Tangent angle of the path at ``t``.

    Returned on the branch nearest ``reference`` (by default the heading at
    the start of the path), which keeps it continuous along a path that
    never points exactly opposite that reference.
    """
    vx, vy = spec.velocity(t)
    vx, vy = float(vx), float(vy)
    if vx == 0.0 and vy == 0.0:
        raise HeadingUndefined(f"reference velocity is zero at t={t}")
    ref = _anchor(spec) if reference is None else reference
    return wrap_near(math.atan2(vy, vx), ref)


def sample_path(spec: PathSpec, sampling: PathSampling, with_heading: bool = True) -> list[DesiredState]:
    """Samples at ``t0, t0 + dt_path, ...``; headings unwrapped along the series."""
    out = []
    prev = None
    for t in sampling.times():
        d = eval_path(spec, float(t))
        th = None
        if with_heading and (d.vx_d != 0.0 or d.vy_d != 0.0):
            th = desired_heading(spec, float(t), prev)
            prev = th
        out.append(DesiredState(d.x_d, d.y_d, d.vx_d, d.vy_d, th))
    return out


def sample_arrays(spec: PathSpec, times: Sequence[float]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised positions plus raw tangent angles (NaN where undefined)."""
    t = np.asarray(times, dtype=float)
    x, y = spec.position(t)
    vx, vy = spec.velocity(t)
    x = np.broadcast_to(np.asarray(x, dtype=float), t.shape).copy()
    y = np.broadcast_to(np.asarray(y, dtype=float), t.shape).copy()
    vx = np.broadcast_to(np.asarray(vx, dtype=float), t.shape)
    vy = np.broadcast_to(np.asarray(vy, dtype=float), t.shape)
    th = np.where((vx == 0) & (vy == 0), np.nan, np.arctan2(vy, vx))
    return x, y, th


def load_waypoints(path: str | Path) -> Waypoints:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["t", "x", "y"]:
            raise ValueError(f"{path}: expected header t,x,y")
        rows = [tuple(float(v) for v in row) for row in reader if row]
    t, x, y = zip(*rows) if rows else ((), (), ())
    return Waypoints(tuple(t), tuple(x), tuple(y))
