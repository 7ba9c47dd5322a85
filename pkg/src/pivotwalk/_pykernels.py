"""Pure-Python kernels.

Scalar helpers used by the public API plus the two closed loops (tracking and
straight-line gait). ``_kernels.pyx`` mirrors this file operation for
operation; keep them in sync, the test suite compares the two bit for bit.
"""

from __future__ import annotations

import math

import numpy as np

ARC = 0
EULER = 1

GEOMETRIC = 0
OPTIM = 1

S0_ACCUMULATE = 0
S0_ZERO = 1
S0_SIGN = 2

# Rotation slack when deciding that a gait sweep is complete. Substeps are
# clipped to land on the gate, so only rounding has to be absorbed here.
GATE_TOL = 1e-9

LOG_COLUMNS = ("t", "x", "y", "theta", "sigma", "omega", "x_d", "y_d", "e_n", "switch")


def _norm(dx, dy):
    return math.sqrt(dx * dx + dy * dy)


def arc_step(x, y, th, sigma, omega, dt, half):
    d = omega * dt
    if d == 0.0:
        # px + (x - px) need not round back to x
        return x, y, th
    s = math.sin(th)
    c = math.cos(th)
    if sigma > 0:
        px = x - half * s
        py = y + half * c
    else:
        px = x + half * s
        py = y - half * c
    cd = math.cos(d)
    sd = math.sin(d)
    rx = x - px
    ry = y - py
    return px + (cd * rx - sd * ry), py + (sd * rx + cd * ry), th + d


def euler_step(x, y, th, sigma, omega, dt, half):
    v = half * sigma * omega
    return x + dt * (v * math.cos(th)), y + dt * (v * math.sin(th)), th + dt * omega


def step(x, y, th, sigma, omega, dt, half, integrator):
    if integrator == ARC:
        return arc_step(x, y, th, sigma, omega, dt, half)
    return euler_step(x, y, th, sigma, omega, dt, half)


def select(x, y, th, xd, yd, half, current):
    # squared distances: same ordering as the Euclidean ones, exact ties
    s = math.sin(th)
    c = math.cos(th)
    ax = x - half * s - xd
    ay = y + half * c - yd
    bx = x + half * s - xd
    by = y - half * c - yd
    da = ax * ax + ay * ay
    db = bx * bx + by * by
    if db > da:
        return 1
    if db < da:
        return -1
    return current


def wrap_near(angle, ref):
    """Representative of ``angle`` (mod 2*pi) closest to ``ref``."""
    d = angle - ref
    d = d - 2.0 * math.pi * math.floor((d + math.pi) / (2.0 * math.pi))
    return ref + d


def grads(x, y, th, xd, yd, thd, sigma, omega, dt, half, wt):
    """(dJ/domega, dJ/dsigma) of the cost after one semi-implicit step."""
    thp = th + dt * omega
    c = math.cos(thp)
    s = math.sin(thp)
    a = dt * half
    ex = x + a * sigma * omega * c - xd
    ey = y + a * sigma * omega * s - yd
    dxw = a * sigma * c
    dyw = a * sigma * s
    dxt = -a * sigma * omega * s
    dyt = a * sigma * omega * c
    gw = ex * (dxw + dxt * dt) + ey * (dyw + dyt * dt)
    if wt != 0.0:
        gw = gw + wt * (thp - thd) * dt
    gs = ex * (a * omega * c) + ey * (a * omega * s)
    return gw, gs


def clamp(v, lim):
    if v > lim:
        return lim
    if v < -lim:
        return -lim
    return v


def track(ctrl, xd, yd, thd, x0, y0, th0, L, k, eta, wmax, wt, s0mode, literal,
          theta_s, integrator, dt_control, n_sub, jitter, slip):
    """Closed-loop tracking run.

    ``xd``/``yd``/``thd`` hold the desired state at each control tick plus one
    trailing sample for the final log row. Returns ``(log, switch_count)``
    with ``log`` shaped ``(n_ticks * n_sub + 1, 10)``.
    """
    n_ticks = len(xd) - 1
    xd = list(map(float, xd))
    yd = list(map(float, yd))
    thd = list(map(float, thd))
    jitter = list(map(float, jitter))
    slip = [(float(a), float(b)) for a, b in slip]
    half = 0.5 * L
    h = dt_control / n_sub
    log = np.empty((n_ticks * n_sub + 1, 10))
    x = x0
    y = y0
    th = th0
    sigma = select(x, y, th, xd[0], yd[0], half, 1)
    thg = th
    w0 = 0.0
    s0 = 0.0 if s0mode == S0_ZERO else float(sigma)
    sign = 1.0 if literal else -1.0
    sw = 0
    omega = 0.0
    row = 0
    for i in range(n_ticks):
        xdi = xd[i]
        ydi = yd[i]
        switched = 0
        if ctrl == GEOMETRIC:
            if abs(th - thg) >= theta_s:
                ns = select(x, y, th, xdi, ydi, half, sigma)
                if ns != sigma:
                    switched = 1
                sigma = ns
                thg = th
            omega = k * sigma * _norm(x - xdi, y - ydi)
        else:
            thdi = wrap_near(thd[i], th) if wt != 0.0 else 0.0
            gw, gs = grads(x, y, th, xdi, ydi, thdi, sigma, clamp(w0, wmax),
                           dt_control, half, wt)
            w0 = w0 + sign * eta * gw
            s0 = s0 + sign * eta * gs
            if abs(th - thg) >= theta_s:
                if s0 > 0.0:
                    ns = 1
                elif s0 < 0.0:
                    ns = -1
                else:
                    ns = sigma
                if ns != sigma:
                    switched = 1
                sigma = ns
                thg = th
                if s0mode == S0_ZERO:
                    s0 = 0.0
                elif s0mode == S0_SIGN:
                    s0 = float(sigma)
            omega = clamp(w0, wmax)
        if switched:
            x = x + slip[sw][0]
            y = y + slip[sw][1]
            sw += 1
        w = omega + jitter[i]
        for j in range(n_sub):
            log[row, 0] = (i * n_sub + j) * h
            log[row, 1] = x
            log[row, 2] = y
            log[row, 3] = th
            log[row, 4] = sigma
            log[row, 5] = w
            log[row, 6] = xdi
            log[row, 7] = ydi
            log[row, 8] = _norm(x - xdi, y - ydi)
            log[row, 9] = switched if j == 0 else 0
            row += 1
            x, y, th = step(x, y, th, sigma, w, h, half, integrator)
    log[row, 0] = n_ticks * n_sub * h
    log[row, 1] = x
    log[row, 2] = y
    log[row, 3] = th
    log[row, 4] = sigma
    log[row, 5] = omega + jitter[n_ticks - 1] if n_ticks > 0 else 0.0
    log[row, 6] = xd[n_ticks]
    log[row, 7] = yd[n_ticks]
    log[row, 8] = _norm(x - xd[n_ticks], y - yd[n_ticks])
    log[row, 9] = 0
    return log, sw


def gait(L, theta_d, goal, wnom, h, integrator, x0, y0, th0, t_max, record, max_ticks):
    """Open-loop straight-line gait.

    Returns ``(switches, steps_fractional, travel, t_end, done, log)``; ``log``
    is ``None`` unless ``record``.
    """
    half = 0.5 * L
    ux = math.cos(th0)
    uy = math.sin(th0)
    x = x0
    y = y0
    th = th0
    sigma = 1
    omega = wnom
    thg = th
    sweep = 0.5 * theta_d
    sw = 0
    t = 0.0
    travel = 0.0
    done = 0
    log = np.empty((max_ticks + 1, 10)) if record else None
    ticks = 0
    while ticks < max_ticks and t < t_max:
        switched = 0
        if abs(th - thg) >= sweep - GATE_TOL:
            sigma = -sigma
            omega = -omega
            thg = th
            sweep = theta_d
            sw += 1
            switched = 1
        rem = sweep - abs(th - thg)
        dt = h
        if rem < abs(omega) * dt:
            dt = rem / abs(omega)
        if t + dt > t_max:
            dt = t_max - t
        nx, ny, nth = step(x, y, th, sigma, omega, dt, half, integrator)
        p = (nx - x0) * ux + (ny - y0) * uy
        if p >= goal:
            # land on the goal exactly: bisect the substep
            lo = 0.0
            hi = dt
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                mx, my, mth = step(x, y, th, sigma, omega, mid, half, integrator)
                if (mx - x0) * ux + (my - y0) * uy >= goal:
                    hi = mid
                else:
                    lo = mid
            dt = hi
            nx, ny, nth = step(x, y, th, sigma, omega, dt, half, integrator)
            done = 1
        if record:
            gx = x0 + goal * ux
            gy = y0 + goal * uy
            log[ticks, 0] = t
            log[ticks, 1] = x
            log[ticks, 2] = y
            log[ticks, 3] = th
            log[ticks, 4] = sigma
            log[ticks, 5] = omega
            log[ticks, 6] = gx
            log[ticks, 7] = gy
            log[ticks, 8] = _norm(x - gx, y - gy)
            log[ticks, 9] = switched
        travel += _norm(nx - x, ny - y)
        x = nx
        y = ny
        th = nth
        t += dt
        ticks += 1
        if done:
            break
    frac = sw + abs(th - thg) / sweep
    if record:
        gx = x0 + goal * ux
        gy = y0 + goal * uy
        log[ticks, 0] = t
        log[ticks, 1] = x
        log[ticks, 2] = y
        log[ticks, 3] = th
        log[ticks, 4] = sigma
        log[ticks, 5] = omega
        log[ticks, 6] = gx
        log[ticks, 7] = gy
        log[ticks, 8] = _norm(x - gx, y - gy)
        log[ticks, 9] = 0
        log = log[: ticks + 1].copy()
    return sw, frac, travel, t, done, log
