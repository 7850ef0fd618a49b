"""Pure numpy implementation of the sampling and path-simulation core.

This module is the reference for the draw discipline that the compiled
core mirrors. Both backends consume ONLY uniform doubles from the bit
generator, in this exact order, so that a given Philox stream produces
the same trajectories on either backend:

  * per proposal round over the k pending lanes (ascending lane order):
    k uniforms for the Kanter angle, then k uniforms for the exponential
    divisor (E = -log1p(-u)), then k uniforms for the accept test;
  * per time step, after the subordinator values are settled: one uniform
    per alive path per coordinate, path-major, turned into a normal via
    the inverse CDF.

Everything returns per-path arrays; aggregation lives in relkernel.mc.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import ndtri

BACKEND_NAME = "fallback"

_PI = math.pi
_TINY = 1e-300


def _kanter_log_a(u: np.ndarray, sigma: float) -> np.ndarray:
    """log of Kanter's a(u) on (0,1); vectorized, clamped away from u=0."""
    u = np.maximum(u, _TINY)
    return ((sigma / (1.0 - sigma)) * np.log(np.sin(sigma * _PI * u))
            + np.log(np.sin((1.0 - sigma) * _PI * u))
            - np.log(np.sin(_PI * u)) / (1.0 - sigma))


def stable_batch(gen: np.random.Generator, n: int, t: float, index: float) -> np.ndarray:
    """n draws of the one-sided stable law with Laplace transform
    exp(-t lambda^index)."""
    sigma = index
    u = gen.random(n)
    w = gen.random(n)
    e = -np.log1p(-w)
    with np.errstate(divide="ignore", over="ignore"):
        s1 = np.exp(((1.0 - sigma) / sigma) * (_kanter_log_a(u, sigma) - np.log(e)))
    return t ** (1.0 / sigma) * s1


def tempered_batch(gen: np.random.Generator, n: int, t: float, alpha: float,
                   m: float, t_max: float) -> tuple[np.ndarray, int]:
    """n draws of the tempered subordinator increment over time t, plus the
    total number of stable proposals spent.

    Rejection from the plain stable law with acceptance weight
    exp(-m^(2/alpha) S); t is split so each piece has acceptance rate
    at least exp(-m t_max).
    """
    pieces = max(1, math.ceil(t / t_max - 1e-12))
    t_sub = t / pieces
    sigma = alpha / 2.0
    t_scale = t_sub ** (1.0 / sigma)
    m2a = m ** (2.0 / alpha)
    out = np.zeros(n)
    proposals = 0
    for _ in range(pieces):
        pend = np.arange(n)
        while pend.size:
            k = pend.size
            u = gen.random(k)
            w = gen.random(k)
            a = gen.random(k)
            e = -np.log1p(-w)
            with np.errstate(divide="ignore", over="ignore"):
                s = t_scale * np.exp(((1.0 - sigma) / sigma)
                                     * (_kanter_log_a(u, sigma) - np.log(e)))
            acc = a <= np.exp(-m2a * s)
            out[pend[acc]] += s[acc]
            pend = pend[~acc]
            proposals += k
    return out, proposals


def _step_subordinator(gen, n_alive: int, sigma: float, t_scale: float,
                       m2a: float) -> np.ndarray:
    """One tempered increment per alive path (time step already folded
    into t_scale)."""
    v = np.zeros(n_alive)
    pend = np.arange(n_alive)
    while pend.size:
        k = pend.size
        u = gen.random(k)
        w = gen.random(k)
        a = gen.random(k)
        e = -np.log1p(-w)
        with np.errstate(divide="ignore", over="ignore"):
            s = t_scale * np.exp(((1.0 - sigma) / sigma)
                                 * (_kanter_log_a(u, sigma) - np.log(e)))
        acc = a <= np.exp(-m2a * s)
        v[pend[acc]] = s[acc]
        pend = pend[~acc]
    return v


def simulate_exit(gen: np.random.Generator, x0: np.ndarray, alpha: float,
                  m: float, dt: float, horizon: float, n: int,
                  domain: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Run n paths from x0 until they leave the domain or reach the horizon.

    domain 0 is the half-space {x_d > 0}; domain 1 is the interval (0, 1)
    (d must be 1). Exits are detected on the time grid k*dt, which biases
    recorded exit times up by at most dt.

    Returns (tau, x_final, alive): grid exit times (capped at the horizon),
    positions at exit detection or at the horizon, and the still-alive flag.
    """
    x0 = np.asarray(x0, dtype=float)
    d = x0.size
    n_steps = math.ceil(horizon / dt - 1e-9)
    sigma = alpha / 2.0
    t_scale = dt ** (2.0 / alpha)
    m2a = m ** (2.0 / alpha)
    x = np.tile(x0, (n, 1))
    tau = np.full(n, horizon)
    alive = np.ones(n, dtype=bool)
    idx = np.arange(n)
    for k in range(1, n_steps + 1):
        na = idx.size
        if na == 0:
            break
        v = _step_subordinator(gen, na, sigma, t_scale, m2a)
        z = ndtri(gen.random(na * d)).reshape(na, d)
        x[idx] += np.sqrt(2.0 * v)[:, None] * z
        if domain == 0:
            out = x[idx, d - 1] <= 0.0
        else:
            out = (x[idx, 0] <= 0.0) | (x[idx, 0] >= 1.0)
        if out.any():
            gone = idx[out]
            tau[gone] = k * dt
            alive[gone] = False
            idx = idx[~out]
    return tau, x, alive


def simulate_occupation(gen: np.random.Generator, x0: np.ndarray, alpha: float,
                        m: float, dt: float, horizon: float, n: int,
                        center: np.ndarray, radius: float,
                        discount: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Like simulate_exit on the half-space, accumulating per path the
    (optionally discounted) time spent in the open ball B(center, radius)
    before exit, by the left endpoint rule on the step grid.

    Returns (occupation, tau, alive).
    """
    x0 = np.asarray(x0, dtype=float)
    center = np.asarray(center, dtype=float)
    d = x0.size
    n_steps = math.ceil(horizon / dt - 1e-9)
    sigma = alpha / 2.0
    t_scale = dt ** (2.0 / alpha)
    m2a = m ** (2.0 / alpha)
    r2 = radius * radius
    x = np.tile(x0, (n, 1))
    tau = np.full(n, horizon)
    alive = np.ones(n, dtype=bool)
    occ = np.zeros(n)
    idx = np.arange(n)
    for k in range(1, n_steps + 1):
        na = idx.size
        if na == 0:
            break
        # occupation weight for [t_(k-1), t_k) uses the position at t_(k-1)
        wk = math.exp(-discount * (k - 1) * dt) * dt
        diff = x[idx] - center
        inside = np.einsum("ij,ij->i", diff, diff) < r2
        occ[idx[inside]] += wk
        v = _step_subordinator(gen, na, sigma, t_scale, m2a)
        z = ndtri(gen.random(na * d)).reshape(na, d)
        x[idx] += np.sqrt(2.0 * v)[:, None] * z
        out = x[idx, d - 1] <= 0.0
        if out.any():
            gone = idx[out]
            tau[gone] = k * dt
            alive[gone] = False
            idx = idx[~out]
    return occ, tau, alive
