from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .. import _backend
from .._pykernels import ARC, EULER, GEOMETRIC, LOG_COLUMNS, OPTIM
from ..controllers import SIGMA0_MODES
from ..kinematics import RobotGeometry
from ..trajectories import sample_arrays
from .config import GeometricController, OptimController, SimConfig, SimulationError, StraightLineGait

INTEGRATOR_CODES = {"arc": ARC, "euler": EULER}


@dataclass
class RunLog:
    """Per-tick trace; one row per integration step plus the final pose.

    Row ``k`` holds the pose at ``t_k`` and the input applied over
    ``[t_k, t_k+1)``. ``switch`` marks rows whose ``sigma`` differs from the
    previous row.
    """

    data: np.ndarray

    columns = LOG_COLUMNS

    def __len__(self) -> int:
        return self.data.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.data[:, LOG_COLUMNS.index(name)]

    @property
    def t(self) -> np.ndarray:
        return self.column("t")


@dataclass(frozen=True)
class RunMetrics:
    n_steps: int
    travel_distance: float
    normalized_error: float
    mean_error: float
    final_error: float
    wall_time: float = 0.0
    steps_fractional: float | None = None
    gate_count: int | None = None

    def as_dict(self, include_wall_time: bool = False) -> dict:
        d = {
            "n_steps": self.n_steps,
            "travel_distance": self.travel_distance,
            "normalized_error": self.normalized_error,
            "mean_error": self.mean_error,
            "final_error": self.final_error,
        }
        if self.steps_fractional is not None:
            d["steps_fractional"] = self.steps_fractional
        if include_wall_time:
            d["wall_time"] = self.wall_time
        return d


def compute_metrics(log: RunLog, geom: RobotGeometry, wall_time: float = 0.0) -> RunMetrics:
    if len(log) == 0:
        raise ValueError("cannot compute metrics of an empty log")
    sigma = log.column("sigma")
    n_steps = int(np.count_nonzero(np.diff(sigma) != 0))
    dx = np.diff(log.column("x"))
    dy = np.diff(log.column("y"))
    travel = float(np.sum(np.sqrt(dx * dx + dy * dy)))
    e = log.column("e_n")
    return RunMetrics(
        n_steps=n_steps,
        travel_distance=travel,
        normalized_error=float(np.sum(e)) / geom.length,
        mean_error=float(np.mean(e)),
        final_error=float(e[-1]),
        wall_time=wall_time,
    )


def noise_draws(config: SimConfig, n_ticks: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-tick rate jitter and per-switch centre slip, pre-drawn from the seed."""
    rng = np.random.default_rng(config.seed)
    n = max(n_ticks, 1)
    jitter = np.zeros(n)
    slip = np.zeros((n + 1, 2))
    if config.noise.omega_jitter_std > 0:
        jitter = rng.normal(0.0, config.noise.omega_jitter_std, n)
    if config.noise.pivot_slip_std > 0:
        slip = rng.normal(0.0, config.noise.pivot_slip_std, (n + 1, 2))
    return jitter, slip


def control_ticks(config: SimConfig) -> int:
    return int(math.floor(config.t_f / config.control_step + 1e-9))


def desired_at_ticks(config: SimConfig, n_ticks: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reference held between path samples (zero-order hold at ``dt_path``)."""
    ratio = int(round(config.dt_path / config.control_step))
    idx = np.arange(n_ticks + 1) // ratio
    return sample_arrays(config.path, idx * config.dt_path)


def _tracking(config: SimConfig, kern) -> tuple[np.ndarray, int]:
    n_ticks = control_ticks(config)
    xd, yd, thd = desired_at_ticks(config, n_ticks)
    ctrl = config.controller
    k = eta = wmax = wt = 0.0
    s0mode = literal = 0
    if isinstance(ctrl, GeometricController):
        code = GEOMETRIC
        k = ctrl.gains.k
    else:
        code = OPTIM
        g = ctrl.gains
        eta, wmax, wt = g.eta, g.omega_max, g.theta_weight
        s0mode = SIGMA0_MODES[g.sigma0_mode]
        literal = int(g.paper_literal_sign)
        if wt > 0 and not np.all(np.isfinite(thd[:n_ticks])):
            bad = float(np.argmax(~np.isfinite(thd)) * config.control_step)
            raise SimulationError(f"desired heading undefined at t={bad} s while theta_weight > 0")
    jitter, slip = noise_draws(config, n_ticks)
    s = config.initial_state
    log, sw = kern.track(
        code, np.ascontiguousarray(xd), np.ascontiguousarray(yd), np.ascontiguousarray(thd),
        s.x, s.y, s.theta, config.geometry.length, k, eta, wmax, wt, s0mode, literal,
        config.gait.sweep_angle, INTEGRATOR_CODES[config.integrator], config.control_step,
        config.substeps, jitter, slip,
    )
    return np.asarray(log), int(sw)


def gait_tick_budget(config: SimConfig) -> int:
    c = config.controller
    L = config.geometry.length
    td = config.gait.desired_sweep
    n_est = c.goal_distance / (L * math.sin(0.5 * td)) + 2.0
    rot_ticks = n_est * td / (c.omega_nominal * config.integration_step)
    return int(2.0 * (rot_ticks + 2.0 * n_est) + 100)


def run_gait(config: SimConfig, record: bool = True, backend: str | None = None):
    """Raw straight-line gait result: ``(switches, fractional, travel, t_end, done, log)``."""
    kern = _backend.get(backend)
    c = config.controller
    s = config.initial_state
    t_max = math.inf if config.t_f is None else config.t_f
    out = kern.gait(
        config.geometry.length, config.gait.desired_sweep, c.goal_distance, c.omega_nominal,
        config.integration_step, INTEGRATOR_CODES[config.integrator], s.x, s.y, s.theta,
        t_max, bool(record), gait_tick_budget(config),
    )
    if not out[4] and config.t_f is None:
        raise SimulationError("straight-line gait did not reach the goal within its tick budget")
    return out


def run_simulation(config: SimConfig, backend: str | None = None) -> tuple[RunLog, RunMetrics]:
    start = time.perf_counter()
    if isinstance(config.controller, StraightLineGait):
        sw, frac, _, _, _, data = run_gait(config, True, backend)
        log = RunLog(np.asarray(data))
        m = compute_metrics(log, config.geometry, time.perf_counter() - start)
        return log, RunMetrics(**{**m.__dict__, "steps_fractional": float(frac), "gate_count": int(sw)})
    data, sw = _tracking(config, _backend.get(backend))
    log = RunLog(data)
    m = compute_metrics(log, config.geometry, time.perf_counter() - start)
    if m.n_steps != sw:
        raise SimulationError(f"switch bookkeeping mismatch ({m.n_steps} vs {sw})")
    return log, m
