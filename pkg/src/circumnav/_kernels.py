"""Compiled scalar kernels.

Everything in here works on plain floats so that the same code path serves
both the public (dataclass based) API and the compiled simulation loop.
"""
import math

import numpy as np
from numba import njit

TWO_PI = 2.0 * math.pi

LAW_SMOOTH = 0
LAW_SIGNUM = 1

SCHEME_RK4 = 0
SCHEME_EULER = 1

# Range below which the vehicle is considered to sit on the target.
SINGULAR_RANGE = 1e-9


@njit(cache=True)
def wrap(a):
    w = a % TWO_PI
    # fmod of tiny negatives can round up to exactly 2*pi
    if w >= TWO_PI:
        w = 0.0
    return w


@njit(cache=True)
def geometry(x, y, psi, tx, ty, speed):
    dx = tx - x
    dy = ty - y
    r = math.hypot(dx, dy)
    theta = wrap(psi - math.atan2(dy, dx))
    return r, theta, -speed * math.cos(theta)


@njit(cache=True)
def tangent_cos(r, r_d):
    q = r_d / r
    return -math.sqrt(max(0.0, 1.0 - q * q))


@njit(cache=True)
def sign(a):
    if a > 0.0:
        return 1.0
    if a < 0.0:
        return -1.0
    return 0.0


@njit(cache=True)
def smooth_omega(r, r_dot, k, r_d, speed):
    if r < r_d:
        return 0.0
    return k * (2.0 * r * speed * tangent_cos(r, r_d) - 2.0 * r * r_dot)


@njit(cache=True)
def signum_omega(r, r_dot, k, r_d, speed):
    if r < r_d:
        return 0.0
    return k * sign(speed * tangent_cos(r, r_d) - r_dot)


@njit(cache=True)
def omega(law, r, r_dot, k, r_d, speed):
    if law == LAW_SMOOTH:
        return smooth_omega(r, r_dot, k, r_d, speed)
    return signum_omega(r, r_dot, k, r_d, speed)


@njit(cache=True)
def rk4_step(x, y, psi, speed, w, dt):
    # The right-hand side only depends on psi, and psi is linear in time under
    # a held turn rate, so stages 2 and 3 coincide.
    c1 = math.cos(psi)
    s1 = math.sin(psi)
    p2 = psi + 0.5 * dt * w
    c2 = math.cos(p2)
    s2 = math.sin(p2)
    p4 = psi + dt * w
    c4 = math.cos(p4)
    s4 = math.sin(p4)
    h = dt / 6.0
    x_new = x + h * speed * (c1 + 4.0 * c2 + c4)
    y_new = y + h * speed * (s1 + 4.0 * s2 + s4)
    return x_new, y_new, wrap(p4)


@njit(cache=True)
def euler_step(x, y, psi, speed, w, dt):
    return (x + dt * speed * math.cos(psi),
            y + dt * speed * math.sin(psi),
            wrap(psi + dt * w))


@njit(cache=True)
def integrate(scheme, x, y, psi, speed, w, dt):
    if scheme == SCHEME_RK4:
        return rk4_step(x, y, psi, speed, w, dt)
    return euler_step(x, y, psi, speed, w, dt)


@njit(cache=True)
def filter_update(y_hat, r, tau, dt):
    est = (r - y_hat) / tau
    return y_hat + dt * est, est


@njit(cache=True)
def simulate(x, y, psi, tx, ty, speed, k, r_d, law, scheme, dt, n_steps,
             use_filter, tau):
    """Run the closed loop for ``n_steps`` steps.

    Returns ``(out, n_samples)`` where ``out`` has one row per sample with
    columns x, y, psi, r, theta_b, omega, rdot_true, rdot_est. If the vehicle
    hits the target, ``n_samples`` is the number of valid rows written before
    the singular sample.
    """
    out = np.empty((n_steps + 1, 8))
    y_hat = 0.0
    for i in range(n_steps + 1):
        r, theta, rdot_true = geometry(x, y, psi, tx, ty, speed)
        if r < SINGULAR_RANGE:
            return out, i
        if use_filter:
            if i == 0:
                y_hat = r
            y_hat, rdot_est = filter_update(y_hat, r, tau, dt)
            rdot_used = rdot_est
        else:
            rdot_est = np.nan
            rdot_used = rdot_true
        w = omega(law, r, rdot_used, k, r_d, speed)
        out[i, 0] = x
        out[i, 1] = y
        out[i, 2] = psi
        out[i, 3] = r
        out[i, 4] = theta
        out[i, 5] = w
        out[i, 6] = rdot_true
        out[i, 7] = rdot_est
        if i < n_steps:
            x, y, psi = integrate(scheme, x, y, psi, speed, w, dt)
    return out, n_steps + 1
