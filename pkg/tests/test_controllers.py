import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pivotwalk.controllers import (
    ControllerState,
    GaitParams,
    GeometricGains,
    OptimGains,
    cost,
    field_command,
    geometric_control_step,
    grad_omega,
    grad_sigma,
    initial_controller_state,
    initial_gait_state,
    one_step_rollout,
    optim_control_step,
    pivot_selection,
    straight_line_gait_step,
    tracking_error,
)
from pivotwalk.kinematics import ControlInput, RobotGeometry, RobotState, pivot_positions, step_exact_arc
from pivotwalk.trajectories import DesiredState, EightShape, eval_path

G = RobotGeometry(0.01)
ORIGIN = RobotState(0.0, 0.0, 0.0)


def target(x, y, theta_d=None):
    return DesiredState(x, y, 0.0, 0.0, theta_d)


def test_pivot_selection_examples():
    piv = pivot_positions(ORIGIN, G)
    assert pivot_selection(piv, target(0, 1)) == 1
    assert pivot_selection(piv, target(0, -1), current=1) == -1
    # (1, 0) is equidistant from (0, +-0.005)
    assert pivot_selection(piv, target(1, 0), current=-1) == -1
    assert pivot_selection(piv, target(1, 0), current=1) == 1


def test_tracking_error_examples():
    assert tracking_error(RobotState(3, 4, 0), target(0, 0)) == 5.0
    assert tracking_error(RobotState(0.2, 0.1, 0), target(0.2, 0.1)) == 0.0


@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
def test_tracking_error_translation_invariant(x, y, xd, yd, cx, cy):
    a = tracking_error(RobotState(x, y, 0), target(xd, yd))
    b = tracking_error(RobotState(x + cx, y + cy, 0), target(xd + cx, yd + cy))
    assert a == pytest.approx(b, abs=1e-15)


def test_geometric_examples():
    gait = GaitParams(math.radians(10))
    cs = ControllerState(sigma=1, theta_at_last_switch=-1.0)
    u, new = geometric_control_step(ORIGIN, cs, target(0, 1), GeometricGains(1.0), gait, G)
    assert u.sigma == 1 and u.omega == pytest.approx(1.0)
    assert new.theta_at_last_switch == 0.0
    u, _ = geometric_control_step(ORIGIN, cs, target(0, 0), GeometricGains(5.0), gait, G)
    assert u.omega == 0.0


def test_geometric_gate_closed_keeps_sigma():
    gait = GaitParams(math.radians(10))
    cs = ControllerState(sigma=1, theta_at_last_switch=0.0)
    # B is much nearer, but the sweep is not complete
    u, new = geometric_control_step(RobotState(0, 0, 0.1), cs, target(0, -1), GeometricGains(1.0), gait, G)
    assert u.sigma == 1 and new == cs
    u, new = geometric_control_step(RobotState(0, 0, 0.2), cs, target(0, -1), GeometricGains(1.0), gait, G)
    assert u.sigma == -1 and new.switch_count == 1 and new.theta_at_last_switch == 0.2


@given(st.floats(-0.1, 0.1), st.floats(-0.1, 0.1), st.floats(-20, 20), st.floats(-0.1, 0.1), st.floats(-0.1, 0.1),
       st.sampled_from([-1, 1]), st.floats(-1, 1))
def test_geometric_rate_sign_follows_sigma(x, y, th, xd, yd, sigma, th0):
    cs = ControllerState(sigma=sigma, theta_at_last_switch=th0)
    s = RobotState(x, y, th)
    u, _ = geometric_control_step(s, cs, target(xd, yd), GeometricGains(50.0), GaitParams(0.5), G)
    if tracking_error(s, target(xd, yd)) > 0:
        assert math.copysign(1.0, u.omega) == u.sigma


def test_cost_examples():
    assert cost(RobotState(0.1, 0.2, 0.3), target(0.1, 0.2, 0.3), 1.0) == 0.0
    assert cost(RobotState(1, 0, 0), target(0, 0)) == 0.5
    with pytest.raises(ValueError):
        cost(ORIGIN, target(0, 0), 1.0)


@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-10, 10), st.floats(-10, 10), st.floats(0, 10))
def test_cost_bounded_below_by_error(x, y, th, thd, w):
    s = RobotState(x, y, th)
    d = target(0.0, 0.0, thd)
    j = cost(s, d, w)
    half_e2 = 0.5 * tracking_error(s, d) ** 2
    assert j >= half_e2 * (1 - 1e-15)
    if w == 0 or th == thd:
        assert j == pytest.approx(half_e2, rel=1e-15, abs=0)


def test_grad_examples():
    u = ControlInput(1, 0.0)
    assert grad_omega(ORIGIN, target(0, 0), u, 0.1, G) == 0.0
    # 1e-3 * (0.1 * 0.005 * 1)
    g = grad_omega(RobotState(1e-3, 0, 0), target(0, 0), u, 0.1, G)
    assert g == pytest.approx(5e-7, rel=1e-12)
    assert grad_sigma(RobotState(0.3, 0.1, 1.0), target(0, 0), u, 0.1, G) == 0.0
    assert grad_sigma(ORIGIN, target(0, 0), ControlInput(1, 0.0), 0.1, G) == 0.0


def test_grad_example_against_explicit_step_fd():
    # finite difference through one explicit step, at omega = 0 where it agrees
    def j(w):
        x = 1e-3 + 0.1 * 0.005 * w * math.cos(0.0)
        return 0.5 * x * x
    fd = (j(1e-6) - j(-1e-6)) / 2e-6
    assert grad_omega(RobotState(1e-3, 0, 0), target(0, 0), ControlInput(1, 0.0), 0.1, G) == pytest.approx(fd, rel=1e-8)


@given(st.floats(-0.05, 0.05), st.floats(-0.05, 0.05), st.floats(-10, 10), st.floats(-0.05, 0.05),
       st.floats(-0.05, 0.05), st.floats(0.01, 0.3))
def test_grad_omega_odd_in_sigma_at_rest(x, y, th, xd, yd, dt):
    # with omega = 0 the rollout does not move, so only the lever arm flips
    s, d = RobotState(x, y, th), target(xd, yd)
    gp = grad_omega(s, d, ControlInput(1, 0.0), dt, G)
    gm = grad_omega(s, d, ControlInput(-1, 0.0), dt, G)
    assert gm == -gp


def _mp_cost(x, y, th, xd, yd, thd, s, w, dt, half, wt):
    th2 = th + dt * w
    v = dt * half * s * w
    ex = x + v * mp.cos(th2) - xd
    ey = y + v * mp.sin(th2) - yd
    return (ex * ex + ey * ey + wt * (th2 - thd) ** 2) / 2


def test_rollout_matches_reference_formula():
    rng = np.random.default_rng(3)
    for _ in range(100):
        x, y, th, w, dt = rng.uniform(-1, 1, 5)
        s = one_step_rollout(RobotState(x, y, th), ControlInput(1, w), abs(dt) + 0.01, G)
        th2 = th + (abs(dt) + 0.01) * w
        v = (abs(dt) + 0.01) * G.half * w
        assert (s.x, s.y, s.theta) == pytest.approx((x + v * math.cos(th2), y + v * math.sin(th2), th2), abs=1e-15)


def test_gradients_match_extended_precision_central_differences():
    mp.mp.dps = 40
    rng = np.random.default_rng(11)
    h = mp.mpf("1e-15")
    worst = 0.0
    for _ in range(200):
        x, y, xd, yd = rng.uniform(-0.05, 0.05, 4)
        th, thd = rng.uniform(-10, 10, 2)
        sig = int(rng.choice([-1, 1]))
        w = rng.uniform(-5, 5)
        dt = rng.uniform(0.01, 0.3)
        wt = float(rng.uniform(0, 1e-4))
        s, d, u = RobotState(x, y, th), target(xd, yd, thd), ControlInput(sig, w)
        a = [mp.mpf(v) for v in (x, y, th, xd, yd, thd)]
        S, W, DT, H = mp.mpf(sig), mp.mpf(w), mp.mpf(dt), mp.mpf(G.half)
        fw = (_mp_cost(*a, S, W + h, DT, H, wt) - _mp_cost(*a, S, W - h, DT, H, wt)) / (2 * h)
        fs = (_mp_cost(*a, S + h, W, DT, H, 0) - _mp_cost(*a, S - h, W, DT, H, 0)) / (2 * h)
        for g, fd in ((grad_omega(s, d, u, dt, G, wt), fw), (grad_sigma(s, d, u, dt, G), fs)):
            worst = max(worst, float(abs(g - fd) / abs(fd)))
    assert worst < 1e-6


def test_optim_examples():
    gains = OptimGains(eta=1e5, omega_max=2.0)
    gait = GaitParams(math.radians(10))
    cs = ControllerState(sigma=-1, theta_at_last_switch=0.0)
    u, _ = optim_control_step(RobotState(0.1, 0.2, 0.0), cs, target(0.1, 0.2), gains, gait, 0.1, G)
    assert u.omega == 0.0 and u.sigma == -1
    big = ControllerState(sigma=1, theta_at_last_switch=0.0, omega0=50.0)
    u, new = optim_control_step(RobotState(0.1, 0.2, 0.0), big, target(0.1, 0.2), gains, gait, 0.1, G)
    # the pre-image is kept unsaturated
    assert u.omega == 2.0 and new.omega0 > 2.0
    u, _ = optim_control_step(RobotState(0.1, 0.2, 0.0), ControllerState(1, 0.0, -9.0), target(0.1, 0.2), gains,
                              gait, 0.1, G)
    assert u.omega == -2.0


def test_optim_sign_convention():
    gait = GaitParams(math.radians(10))
    s, d = RobotState(1e-3, 0, 0), target(0, 0)
    cs = ControllerState(sigma=1, theta_at_last_switch=0.0)
    g = grad_omega(s, d, ControlInput(1, 0.0), 0.1, G)
    _, new = optim_control_step(s, cs, d, OptimGains(eta=1e3), gait, 0.1, G)
    assert new.omega0 == pytest.approx(-1e3 * g)
    _, new = optim_control_step(s, cs, d, OptimGains(eta=1e3, paper_literal_sign=True), gait, 0.1, G)
    assert new.omega0 == pytest.approx(1e3 * g)


def test_optim_sigma_preimage_modes():
    gait = GaitParams(0.1)
    s, d = RobotState(0, 0, 0.2), target(0, -0.05)
    cs = ControllerState(sigma=1, theta_at_last_switch=0.0, omega0=1.0, sigma0=-0.5)
    for mode, expect in (("accumulate", None), ("zero", 0.0), ("sign", -1.0)):
        u, new = optim_control_step(s, cs, d, OptimGains(eta=1.0, sigma0_mode=mode), gait, 0.1, G)
        assert u.sigma == -1 and new.switch_count == 1 and new.theta_at_last_switch == 0.2
        if expect is not None:
            assert new.sigma0 == expect
    # gate closed: pre-image accumulates, sigma held
    closed = ControllerState(sigma=1, theta_at_last_switch=0.15, omega0=1.0, sigma0=-0.5)
    u, new = optim_control_step(s, closed, d, OptimGains(eta=1.0, sigma0_mode="zero"), gait, 0.1, G)
    assert u.sigma == 1 and new.sigma0 != 0.0


def test_initial_state_modes():
    s, d = RobotState(0, -0.042, math.pi / 2), eval_path(EightShape(0.04, 0.04, 0.1, 0.05), 0.0)
    assert initial_controller_state(s, d, G).sigma0 == initial_controller_state(s, d, G).sigma
    assert initial_controller_state(s, d, G, OptimGains(1.0, sigma0_mode="zero")).sigma0 == 0.0


@pytest.mark.parametrize("eta,mode", [(1e4, "accumulate"), (1e5, "accumulate"), (1e4, "zero")])
def test_descent_property(eta, mode):
    path = EightShape(0.04, 0.04, 0.1, 0.05)
    gains = OptimGains(eta=eta, sigma0_mode=mode)
    gait = GaitParams(math.radians(10))
    dt = 0.1
    s = RobotState(0, -0.042, math.pi / 2)
    cs = initial_controller_state(s, eval_path(path, 0.0), G, gains)
    prev = ControlInput(cs.sigma, 0.0)
    ok = 0
    n = 100
    for k in range(n):
        d = eval_path(path, k * dt)
        u, cs = optim_control_step(s, cs, d, gains, gait, dt, G)
        ok += cost(one_step_rollout(s, u, dt, G), d) <= cost(one_step_rollout(s, prev, dt, G), d)
        s = step_exact_arc(s, u, G, dt)
        prev = u
    assert ok >= 0.95 * n


def test_gait_first_sweep_and_alternation():
    gait = GaitParams(math.radians(60), desired_sweep=math.radians(60))
    s = RobotState(0, 0, 0)
    gs = initial_gait_state(s, gait, 1.0)
    assert gs.sweep == pytest.approx(math.radians(30))
    u, gs1, done = straight_line_gait_step(s, gs, gait, 0.06, 1.0)
    assert (u.sigma, u.omega, done) == (1, 1.0, False)
    s = step_exact_arc(s, u, G, math.radians(30))
    u, gs2, _ = straight_line_gait_step(s, gs1, gait, 0.06, 1.0)
    assert (u.sigma, u.omega) == (-1, -1.0)
    assert gs2.switch_count == 1 and gs2.sweep == math.radians(60)
    s = step_exact_arc(s, u, G, math.radians(60))
    u, gs3, _ = straight_line_gait_step(s, gs2, gait, 0.06, 1.0)
    assert (u.sigma, u.omega) == (1, 1.0) and gs3.switch_count == 2


def test_gait_reports_done_and_checks_inputs():
    gait = GaitParams(1.0, desired_sweep=1.0)
    s = RobotState(0, 0, 0)
    gs = initial_gait_state(s, gait, 1.0)
    _, _, done = straight_line_gait_step(RobotState(0.07, 0, 0), gs, gait, 0.06)
    assert done
    with pytest.raises(ValueError):
        straight_line_gait_step(s, gs, gait, 0.0)
    with pytest.raises(ValueError):
        straight_line_gait_step(s, gs, gait, 0.06, 2.0)
    with pytest.raises(ValueError):
        initial_gait_state(s, GaitParams(1.0), 1.0)


def test_gait_params_validation():
    for bad in (0.0, 2 * math.pi, -0.1):
        with pytest.raises(ValueError):
            GaitParams(bad)
    with pytest.raises(ValueError):
        GaitParams(0.5, tilt_angle=math.pi / 2)
    with pytest.raises(ValueError):
        OptimGains(eta=1.0, sigma0_mode="nope")
    with pytest.raises(ValueError):
        GeometricGains(0.0)


def test_field_command():
    v = field_command(RobotState(0, 0, 0.3), 1, 0.0)
    assert v[2] == 0.0
    assert v[:2] @ [math.cos(0.3), math.sin(0.3)] == pytest.approx(0.0, abs=1e-16)
    with pytest.raises(ValueError):
        field_command(ORIGIN, 0, 0.1)
    with pytest.raises(ValueError):
        field_command(ORIGIN, 1, math.pi / 2)


@given(st.floats(-20, 20), st.sampled_from([-1, 1]), st.floats(0, 1.5))
def test_field_command_unit_and_mirror(th, sigma, alpha):
    s = RobotState(0, 0, th)
    a = field_command(s, sigma, alpha)
    b = field_command(s, -sigma, alpha)
    assert np.linalg.norm(a) == pytest.approx(1.0, rel=1e-15)
    assert np.array_equal(a[:2], b[:2]) and a[2] == -b[2]
