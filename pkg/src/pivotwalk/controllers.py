"""Tracking controllers and the open-loop straight-line gait.

All controllers emit ``(sigma, omega)`` and only change the active pivot once
the body has swept ``sweep_angle`` since the previous pivot decision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _pykernels as _k
from .kinematics import ControlInput, PivotPair, RobotGeometry, RobotState, pivot_positions
from .trajectories import DesiredState

SIGMA0_MODES = {"accumulate": _k.S0_ACCUMULATE, "zero": _k.S0_ZERO, "sign": _k.S0_SIGN}


@dataclass(frozen=True)
class GaitParams:
    sweep_angle: float
    tilt_angle: float = 0.0
    desired_sweep: float | None = None

    def __post_init__(self) -> None:
        if not (0.0 < self.sweep_angle < 2.0 * math.pi):
            raise ValueError(f"sweep_angle must lie in (0, 2*pi) rad, got {self.sweep_angle!r}")
        if self.desired_sweep is not None and not (0.0 < self.desired_sweep < 2.0 * math.pi):
            raise ValueError(f"desired_sweep must lie in (0, 2*pi) rad, got {self.desired_sweep!r}")
        if not (0.0 <= self.tilt_angle < 0.5 * math.pi):
            raise ValueError(f"tilt_angle must lie in [0, pi/2) rad, got {self.tilt_angle!r}")


@dataclass(frozen=True)
class GeometricGains:
    k: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.k) and self.k > 0):
            raise ValueError(f"k must be positive, got {self.k!r}")


@dataclass(frozen=True)
class OptimGains:
    """Gradient-descent controller settings.

    ``sigma0_mode`` decides what the pivot pre-image does after each pivot
    decision: keep accumulating, restart from zero, or restart from the
    chosen sign.
    """

    eta: float
    omega_max: float = 2.0 * math.pi
    theta_weight: float = 0.0
    sigma0_mode: str = "accumulate"
    paper_literal_sign: bool = False

    def __post_init__(self) -> None:
        if not (math.isfinite(self.eta) and self.eta > 0):
            raise ValueError(f"eta must be positive, got {self.eta!r}")
        if not (math.isfinite(self.omega_max) and self.omega_max > 0):
            raise ValueError(f"omega_max must be positive, got {self.omega_max!r}")
        if not (math.isfinite(self.theta_weight) and self.theta_weight >= 0):
            raise ValueError(f"theta_weight must be >= 0, got {self.theta_weight!r}")
        if self.sigma0_mode not in SIGMA0_MODES:
            raise ValueError(f"sigma0_mode must be one of {sorted(SIGMA0_MODES)}")


@dataclass(frozen=True)
class ControllerState:
    sigma: int
    theta_at_last_switch: float
    omega0: float = 0.0
    sigma0: float = 0.0
    switch_count: int = 0


def pivot_selection(pivots: PivotPair, desired: DesiredState, current: int = 1) -> int:
    """+1 if pivot A is nearer the target, -1 if B is; a tie keeps ``current``."""
    ax, ay = pivots.a[0] - desired.x_d, pivots.a[1] - desired.y_d
    bx, by = pivots.b[0] - desired.x_d, pivots.b[1] - desired.y_d
    da = ax * ax + ay * ay
    db = bx * bx + by * by
    if db > da:
        return 1
    if db < da:
        return -1
    return current


def tracking_error(state: RobotState, desired: DesiredState) -> float:
    return _k._norm(state.x - desired.x_d, state.y - desired.y_d)


def initial_controller_state(
    state: RobotState, desired: DesiredState, geom: RobotGeometry, gains: OptimGains | None = None
) -> ControllerState:
    """Pick the nearer pivot and open the first sweep at the current heading."""
    sigma = pivot_selection(pivot_positions(state, geom), desired)
    s0 = float(sigma)
    if gains is not None and gains.sigma0_mode == "zero":
        s0 = 0.0
    return ControllerState(sigma=sigma, theta_at_last_switch=state.theta, sigma0=s0)


def _gate_open(state: RobotState, cstate: ControllerState, gait: GaitParams) -> bool:
    return abs(state.theta - cstate.theta_at_last_switch) >= gait.sweep_angle


def geometric_control_step(
    state: RobotState,
    cstate: ControllerState,
    desired: DesiredState,
    gains: GeometricGains,
    gait: GaitParams,
    geom: RobotGeometry,
) -> tuple[ControlInput, ControllerState]:
    sigma = cstate.sigma
    new = cstate
    if _gate_open(state, cstate, gait):
        sigma = pivot_selection(pivot_positions(state, geom), desired, cstate.sigma)
        new = replace(
            cstate,
            sigma=sigma,
            theta_at_last_switch=state.theta,
            switch_count=cstate.switch_count + (sigma != cstate.sigma),
        )
    omega = gains.k * sigma * tracking_error(state, desired)
    return ControlInput(sigma, omega), new


def cost(state: RobotState, desired: DesiredState, theta_weight: float = 0.0) -> float:
    ex = state.x - desired.x_d
    ey = state.y - desired.y_d
    j = ex * ex + ey * ey
    if theta_weight > 0:
        if desired.theta_d is None:
            raise ValueError("theta_weight > 0 needs a desired heading")
        et = state.theta - desired.theta_d
        j += theta_weight * et * et
    return 0.5 * j


def one_step_rollout(
    state: RobotState, inp: ControlInput | tuple[float, float], dt: float, geom: RobotGeometry
) -> RobotState:
    """One semi-implicit step: heading first, then translate along the new heading.

    ``inp`` may be a plain ``(sigma, omega)`` pair so that ``sigma`` can be
    treated as a continuous variable.
    """
    sigma, omega = (inp.sigma, inp.omega) if isinstance(inp, ControlInput) else inp
    th = state.theta + dt * omega
    v = dt * geom.half * sigma * omega
    return RobotState(state.x + v * math.cos(th), state.y + v * math.sin(th), th)


def _grads(state, desired, inp, dt, geom, theta_weight):
    thd = 0.0
    if theta_weight != 0.0:
        if desired.theta_d is None:
            raise ValueError("theta_weight > 0 needs a desired heading")
        thd = desired.theta_d
    return _k.grads(
        state.x, state.y, state.theta, desired.x_d, desired.y_d, thd,
        inp.sigma, inp.omega, dt, geom.half, theta_weight,
    )


def grad_omega(
    state: RobotState,
    desired: DesiredState,
    inp: ControlInput,
    dt: float,
    geom: RobotGeometry,
    theta_weight: float = 0.0,
) -> float:
    """dJ/domega of the cost after :func:`one_step_rollout`.

    Chain rule through ``theta+ = theta + dt*omega``, with every partial
    evaluated at the rolled-out pose.
    """
    return _grads(state, desired, inp, dt, geom, theta_weight)[0]


def grad_sigma(
    state: RobotState, desired: DesiredState, inp: ControlInput, dt: float, geom: RobotGeometry
) -> float:
    """dJ/dsigma of the cost after :func:`one_step_rollout`, sigma taken as real."""
    return _grads(state, desired, inp, dt, geom, 0.0)[1]


def optim_control_step(
    state: RobotState,
    cstate: ControllerState,
    desired: DesiredState,
    gains: OptimGains,
    gait: GaitParams,
    dt: float,
    geom: RobotGeometry,
) -> tuple[ControlInput, ControllerState]:
    """One gradient step on ``(omega0, sigma0)``, then saturate and gate."""
    if gains.theta_weight > 0:
        if desired.theta_d is None:
            raise ValueError("theta_weight > 0 needs a desired heading")
        desired = replace(desired, theta_d=_k.wrap_near(desired.theta_d, state.theta))
    w_prev = _k.clamp(cstate.omega0, gains.omega_max)
    gw, gs = _grads(state, desired, ControlInput(cstate.sigma, w_prev), dt, geom, gains.theta_weight)
    sign = 1.0 if gains.paper_literal_sign else -1.0
    w0 = cstate.omega0 + sign * gains.eta * gw
    s0 = cstate.sigma0 + sign * gains.eta * gs
    sigma = cstate.sigma
    th0 = cstate.theta_at_last_switch
    count = cstate.switch_count
    if _gate_open(state, cstate, gait):
        if s0 > 0.0:
            sigma = 1
        elif s0 < 0.0:
            sigma = -1
        count += sigma != cstate.sigma
        th0 = state.theta
        if gains.sigma0_mode == "zero":
            s0 = 0.0
        elif gains.sigma0_mode == "sign":
            s0 = float(sigma)
    new = ControllerState(sigma, th0, w0, s0, count)
    return ControlInput(sigma, _k.clamp(w0, gains.omega_max)), new


@dataclass(frozen=True)
class GaitState:
    """Bookkeeping for the straight-line gait."""

    sigma: int
    omega: float
    theta_at_last_switch: float
    sweep: float
    switch_count: int
    origin: tuple[float, float]
    axis: tuple[float, float]

    def progress(self, state: RobotState) -> float:
        return (state.x - self.origin[0]) * self.axis[0] + (state.y - self.origin[1]) * self.axis[1]


def initial_gait_state(state: RobotState, gait: GaitParams, omega_nominal: float) -> GaitState:
    """Walk along the current heading; the first sweep is half the step sweep."""
    if gait.desired_sweep is None:
        raise ValueError("the straight-line gait needs desired_sweep")
    if not omega_nominal > 0:
        raise ValueError("omega_nominal must be positive")
    return GaitState(
        sigma=1,
        omega=omega_nominal,
        theta_at_last_switch=state.theta,
        sweep=0.5 * gait.desired_sweep,
        switch_count=0,
        origin=(state.x, state.y),
        axis=(math.cos(state.theta), math.sin(state.theta)),
    )


def straight_line_gait_step(
    state: RobotState,
    cstate: GaitState,
    gait: GaitParams,
    goal_distance: float,
    omega_nominal: float | None = None,
) -> tuple[ControlInput, GaitState, bool]:
    """Flip pivot and rotation sense whenever the current sweep is complete.

    ``omega_nominal`` is fixed by :func:`initial_gait_state` and only checked
    here. ``done`` is raised once the centre has advanced ``goal_distance``
    along the initial heading.
    """
    if goal_distance <= 0:
        raise ValueError("goal_distance must be positive")
    if omega_nominal is not None and abs(cstate.omega) != omega_nominal:
        raise ValueError("omega_nominal differs from the gait state")
    if cstate.progress(state) >= goal_distance:
        return ControlInput(cstate.sigma, cstate.omega), cstate, True
    new = cstate
    if abs(state.theta - cstate.theta_at_last_switch) >= cstate.sweep - _k.GATE_TOL:
        new = replace(
            cstate,
            sigma=-cstate.sigma,
            omega=-cstate.omega,
            theta_at_last_switch=state.theta,
            sweep=gait.desired_sweep,
            switch_count=cstate.switch_count + 1,
        )
    return ControlInput(new.sigma, new.omega), new, False


def gait_substep(state: RobotState, cstate: GaitState, h: float) -> float:
    """Integration step clipped so the sweep ends exactly on the gate."""
    rem = cstate.sweep - abs(state.theta - cstate.theta_at_last_switch)
    if rem < abs(cstate.omega) * h:
        return rem / abs(cstate.omega)
    return h


def field_command(state: RobotState, sigma: int, alpha: float) -> np.ndarray:
    """Unit field direction: along the body axis, tilted by ``alpha``.

    The vertical component presses the active pivot's end down, so flipping
    ``sigma`` only flips its sign.
    """
    if sigma not in (-1, 1):
        raise ValueError("sigma must be +1 or -1")
    if not (0.0 <= alpha < 0.5 * math.pi):
        raise ValueError("alpha must lie in [0, pi/2)")
    c = math.cos(alpha)
    return np.array([-c * math.sin(state.theta), c * math.cos(state.theta), -sigma * math.sin(alpha)])
