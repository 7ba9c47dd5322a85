# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twin of ``_pykernels``. Same operations in the same order."""

import numpy as np

from libc.math cimport sin, cos, sqrt, floor, fabs, M_PI

cdef int ARC = 0
cdef int GEOMETRIC = 0
cdef int S0_ZERO = 1
cdef int S0_SIGN = 2
cdef double GATE_TOL = 1e-9


cdef inline double _norm(double dx, double dy) noexcept nogil:
    return sqrt(dx * dx + dy * dy)


cdef inline void _step(double x, double y, double th, int sigma, double omega,
                       double dt, double half, int integrator, double* out) noexcept nogil:
    cdef double s, c, px, py, d, cd, sd, rx, ry, v
    if integrator == ARC:
        d = omega * dt
        if d == 0.0:
            out[0] = x
            out[1] = y
            out[2] = th
            return
        s = sin(th)
        c = cos(th)
        if sigma > 0:
            px = x - half * s
            py = y + half * c
        else:
            px = x + half * s
            py = y - half * c
        cd = cos(d)
        sd = sin(d)
        rx = x - px
        ry = y - py
        out[0] = px + (cd * rx - sd * ry)
        out[1] = py + (sd * rx + cd * ry)
        out[2] = th + d
    else:
        v = half * sigma * omega
        out[0] = x + dt * (v * cos(th))
        out[1] = y + dt * (v * sin(th))
        out[2] = th + dt * omega


cdef inline int _select(double x, double y, double th, double xd, double yd,
                        double half, int current) noexcept nogil:
    cdef double s = sin(th)
    cdef double c = cos(th)
    cdef double ax = x - half * s - xd
    cdef double ay = y + half * c - yd
    cdef double bx = x + half * s - xd
    cdef double by = y - half * c - yd
    cdef double da = ax * ax + ay * ay
    cdef double db = bx * bx + by * by
    if db > da:
        return 1
    if db < da:
        return -1
    return current


cdef inline double _wrap_near(double angle, double ref) noexcept nogil:
    cdef double d = angle - ref
    d = d - 2.0 * M_PI * floor((d + M_PI) / (2.0 * M_PI))
    return ref + d


cdef inline double _clamp(double v, double lim) noexcept nogil:
    if v > lim:
        return lim
    if v < -lim:
        return -lim
    return v


cdef inline void _grads(double x, double y, double th, double xd, double yd, double thd,
                        int sigma, double omega, double dt, double half, double wt,
                        double* out) noexcept nogil:
    cdef double thp = th + dt * omega
    cdef double c = cos(thp)
    cdef double s = sin(thp)
    cdef double a = dt * half
    cdef double ex = x + a * sigma * omega * c - xd
    cdef double ey = y + a * sigma * omega * s - yd
    cdef double dxw = a * sigma * c
    cdef double dyw = a * sigma * s
    cdef double dxt = -a * sigma * omega * s
    cdef double dyt = a * sigma * omega * c
    cdef double gw = ex * (dxw + dxt * dt) + ey * (dyw + dyt * dt)
    if wt != 0.0:
        gw = gw + wt * (thp - thd) * dt
    out[0] = gw
    out[1] = ex * (a * omega * c) + ey * (a * omega * s)


def track(int ctrl, double[::1] xd, double[::1] yd, double[::1] thd,
          double x0, double y0, double th0, double L, double k, double eta,
          double wmax, double wt, int s0mode, int literal, double theta_s,
          int integrator, double dt_control, int n_sub,
          double[::1] jitter, double[:, ::1] slip):
    cdef Py_ssize_t n_ticks = xd.shape[0] - 1
    cdef double half = 0.5 * L
    cdef double h = dt_control / n_sub
    out = np.empty((n_ticks * n_sub + 1, 10))
    cdef double[:, ::1] log = out
    cdef double x = x0, y = y0, th = th0
    cdef int sigma = _select(x, y, th, xd[0], yd[0], half, 1)
    cdef double thg = th
    cdef double w0 = 0.0
    cdef double s0 = 0.0 if s0mode == S0_ZERO else <double>sigma
    cdef double sign = 1.0 if literal else -1.0
    cdef Py_ssize_t sw = 0, row = 0, i, j
    cdef double omega = 0.0, w, xdi, ydi, thdi
    cdef int switched, ns
    cdef double g[2]
    cdef double st[3]
    with nogil:
        for i in range(n_ticks):
            xdi = xd[i]
            ydi = yd[i]
            switched = 0
            if ctrl == GEOMETRIC:
                if fabs(th - thg) >= theta_s:
                    ns = _select(x, y, th, xdi, ydi, half, sigma)
                    if ns != sigma:
                        switched = 1
                    sigma = ns
                    thg = th
                omega = k * sigma * _norm(x - xdi, y - ydi)
            else:
                thdi = _wrap_near(thd[i], th) if wt != 0.0 else 0.0
                _grads(x, y, th, xdi, ydi, thdi, sigma, _clamp(w0, wmax),
                       dt_control, half, wt, g)
                w0 = w0 + sign * eta * g[0]
                s0 = s0 + sign * eta * g[1]
                if fabs(th - thg) >= theta_s:
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
                        s0 = <double>sigma
                omega = _clamp(w0, wmax)
            if switched:
                x = x + slip[sw, 0]
                y = y + slip[sw, 1]
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
                _step(x, y, th, sigma, w, h, half, integrator, st)
                x = st[0]
                y = st[1]
                th = st[2]
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
    return out, sw


cdef inline void _gait_row(double[:, ::1] log, Py_ssize_t r, double t, double x, double y,
                           double th, int sigma, double omega, double gx, double gy,
                           int switched) noexcept nogil:
    log[r, 0] = t
    log[r, 1] = x
    log[r, 2] = y
    log[r, 3] = th
    log[r, 4] = sigma
    log[r, 5] = omega
    log[r, 6] = gx
    log[r, 7] = gy
    log[r, 8] = _norm(x - gx, y - gy)
    log[r, 9] = switched


def gait(double L, double theta_d, double goal, double wnom, double h, int integrator,
         double x0, double y0, double th0, double t_max, bint record, Py_ssize_t max_ticks):
    cdef double half = 0.5 * L
    cdef double ux = cos(th0)
    cdef double uy = sin(th0)
    cdef double x = x0, y = y0, th = th0
    cdef int sigma = 1
    cdef double omega = wnom
    cdef double thg = th
    cdef double sweep = 0.5 * theta_d
    cdef Py_ssize_t sw = 0, ticks = 0
    cdef double t = 0.0, travel = 0.0, rem, dt, p, lo, hi, mid
    cdef int done = 0, switched, it
    cdef double gx = x0 + goal * ux
    cdef double gy = y0 + goal * uy
    cdef double st[3]
    cdef double ms[3]
    cdef double[:, ::1] log
    out = None
    if record:
        out = np.empty((max_ticks + 1, 10))
        log = out
    while ticks < max_ticks and t < t_max:
        switched = 0
        if fabs(th - thg) >= sweep - GATE_TOL:
            sigma = -sigma
            omega = -omega
            thg = th
            sweep = theta_d
            sw += 1
            switched = 1
        rem = sweep - fabs(th - thg)
        dt = h
        if rem < fabs(omega) * dt:
            dt = rem / fabs(omega)
        if t + dt > t_max:
            dt = t_max - t
        _step(x, y, th, sigma, omega, dt, half, integrator, st)
        p = (st[0] - x0) * ux + (st[1] - y0) * uy
        if p >= goal:
            lo = 0.0
            hi = dt
            for it in range(80):
                mid = 0.5 * (lo + hi)
                _step(x, y, th, sigma, omega, mid, half, integrator, ms)
                if (ms[0] - x0) * ux + (ms[1] - y0) * uy >= goal:
                    hi = mid
                else:
                    lo = mid
            dt = hi
            _step(x, y, th, sigma, omega, dt, half, integrator, st)
            done = 1
        if record:
            _gait_row(log, ticks, t, x, y, th, sigma, omega, gx, gy, switched)
        travel += _norm(st[0] - x, st[1] - y)
        x = st[0]
        y = st[1]
        th = st[2]
        t += dt
        ticks += 1
        if done:
            break
    frac = sw + fabs(th - thg) / sweep
    if record:
        _gait_row(log, ticks, t, x, y, th, sigma, omega, gx, gy, 0)
        out = out[: ticks + 1].copy()
    return sw, frac, travel, t, done, out
