"""Monte Carlo estimators for the half-space functionals.

Paths are stepped on a fixed grid with exact increments (the only
discretization effect is exit detection at grid times, which biases exit
times up by at most dt). Work is partitioned into fixed blocks of 4096
paths; block b of a run with stream s draws from the (seed, s + b) stream,
so a run is reproducible bit for bit regardless of worker count, and two
half-budget runs at streams s and s + K merge into exactly the full run.

Estimators reduce per-path weights to the sufficient statistics
(sum of weights, sum of squares, count); Estimate.merge combines them.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from relkernel import _backend
from relkernel.kernels import ProcessParams, density_via_subordination
from relkernel.subordinator import RngStream

__all__ = [
    "PATH_BLOCK",
    "PathConfig",
    "Estimate",
    "Box",
    "Ball",
    "estimate_harmonic_measure",
    "estimate_survival",
    "estimate_green1",
    "estimate_green0",
    "estimate_interval_exit",
    "green0_tail_band",
    "ball_volume",
]

PATH_BLOCK = 4096

DiscretizationNote = Literal["none", "exit_time_biased_up"]


@dataclass(frozen=True)
class PathConfig:
    """Simulation budget and reproducibility contract for one estimator run."""

    n_paths: int
    dt: float = 1e-3
    horizon: float = 50.0
    rng: RngStream = RngStream(0)
    workers: int = 1

    def __post_init__(self) -> None:
        if self.n_paths < 100:
            raise ValueError(f"n_paths must be >= 100, got {self.n_paths}")
        if not (0.0 < self.dt <= 0.1):
            raise ValueError(f"dt must lie in (0, 0.1], got {self.dt}")
        if not self.horizon >= 1.0:
            raise ValueError(f"horizon must be >= 1, got {self.horizon}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class Estimate:
    """Sample mean with its standard error and discretization annotation."""

    mean: float
    stderr: float
    n: int
    discretization_note: DiscretizationNote = "none"

    @classmethod
    def from_weights(cls, w: np.ndarray,
                     note: DiscretizationNote = "none") -> "Estimate":
        n = int(w.size)
        if n < 2:
            raise ValueError("need at least 2 weights for a standard error")
        s, s2 = float(np.sum(w)), float(np.sum(w * w))
        return cls.from_sums(s, s2, n, note)

    @classmethod
    def from_sums(cls, sum_w: float, sum_sq: float, n: int,
                  note: DiscretizationNote = "none") -> "Estimate":
        mean = sum_w / n
        var = max(0.0, (sum_sq - n * mean * mean) / (n - 1))
        return cls(mean, math.sqrt(var / n), n, note)

    def merge(self, other: "Estimate") -> "Estimate":
        """Pool two independent runs through their sufficient statistics."""
        if self.discretization_note != other.discretization_note:
            raise ValueError("cannot merge estimates with different notes")
        sw = self.mean * self.n + other.mean * other.n
        s2 = (self.stderr ** 2 * self.n * (self.n - 1) + self.mean ** 2 * self.n
              + other.stderr ** 2 * other.n * (other.n - 1) + other.mean ** 2 * other.n)
        return Estimate.from_sums(sw, s2, self.n + other.n, self.discretization_note)


@dataclass(frozen=True)
class Box:
    """Axis-aligned closed box; infinite bounds allowed, empty boxes allowed."""

    lo: tuple[float, ...]
    hi: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.lo) != len(self.hi):
            raise ValueError("lo and hi must have equal length")
        object.__setattr__(self, "lo", tuple(float(v) for v in self.lo))
        object.__setattr__(self, "hi", tuple(float(v) for v in self.hi))

    def contains(self, pts: np.ndarray) -> np.ndarray:
        lo = np.asarray(self.lo)
        hi = np.asarray(self.hi)
        return np.all((pts >= lo) & (pts <= hi), axis=1)


@dataclass(frozen=True)
class Ball:
    """Euclidean ball used for local Green-function averages."""

    center: tuple[float, ...]
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", tuple(float(v) for v in self.center))
        if not self.radius > 0.0:
            raise ValueError(f"radius must be positive, got {self.radius}")


def ball_volume(d: int, radius: float) -> float:
    return math.pi ** (d / 2.0) * radius ** d / math.gamma(d / 2.0 + 1.0)


def _n_threads(cfg: PathConfig) -> int:
    cap = os.environ.get("RELKERNEL_THREADS", "")
    workers = cfg.workers
    if cap:
        workers = min(workers, max(1, int(cap)))
    return workers


def _run_blocks(cfg: PathConfig,
                block_fn: Callable[[np.random.Generator, int], np.ndarray],
                note: DiscretizationNote) -> Estimate:
    """Split cfg.n_paths into fixed blocks, run each on its own stream,
    and reduce sufficient statistics in block order."""
    n = cfg.n_paths
    sizes = [PATH_BLOCK] * (n // PATH_BLOCK)
    if n % PATH_BLOCK:
        sizes.append(n % PATH_BLOCK)

    def one(b: int) -> np.ndarray:
        gen = cfg.rng.substream(b).generator()
        return block_fn(gen, sizes[b])

    workers = _n_threads(cfg)
    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            weights = list(pool.map(one, range(len(sizes))))
    else:
        weights = [one(b) for b in range(len(sizes))]
    sum_w = sum_sq = 0.0
    for w in weights:
        sum_w += float(np.sum(w))
        sum_sq += float(np.sum(w * w))
    return Estimate.from_sums(sum_w, sum_sq, n, note)


def _x0(x, p: ProcessParams) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if arr.shape != (p.d,):
        raise ValueError(f"x must have {p.d} coordinate(s), got shape {arr.shape}")
    if not arr[-1] > 0.0:
        raise ValueError(f"start point must be interior (last coord > 0), got {arr[-1]}")
    return arr


def estimate_harmonic_measure(x, region: Box, p: ProcessParams,
                              cfg: PathConfig) -> Estimate:
    """MC estimate of E[e^(-m tau) ; X_tau in region] for the half-space
    exit. Paths still alive at the horizon contribute 0 (the truncation
    error of the discounted weight is below e^(-m*horizon))."""
    x0 = _x0(x, p)
    if len(region.lo) != p.d:
        raise ValueError(f"region must be {p.d}-dimensional")
    if region.hi[-1] > 0.0:
        raise ValueError("region must lie in the half-space complement "
                         f"(hi[-1] <= 0), got hi[-1]={region.hi[-1]}")

    def block(gen: np.random.Generator, nb: int) -> np.ndarray:
        tau, xf, alive = _backend.simulate_exit(
            gen, x0, p.alpha, p.m, cfg.dt, cfg.horizon, nb, 0)
        w = np.exp(-p.m * tau)
        w[alive] = 0.0
        w[~region.contains(xf)] = 0.0
        return w

    return _run_blocks(cfg, block, "exit_time_biased_up")


def estimate_survival(x, t: float, p: ProcessParams, cfg: PathConfig) -> Estimate:
    """MC estimate of P(tau > t), the chance the path has not left the
    half-space by time t. Requires t <= cfg.horizon."""
    x0 = _x0(x, p)
    if not 0.0 < t <= cfg.horizon:
        raise ValueError(f"t must lie in (0, horizon], got t={t}, "
                         f"horizon={cfg.horizon}")

    def block(gen: np.random.Generator, nb: int) -> np.ndarray:
        _, _, alive = _backend.simulate_exit(
            gen, x0, p.alpha, p.m, cfg.dt, t, nb, 0)
        return alive.astype(float)

    return _run_blocks(cfg, block, "exit_time_biased_up")


def _estimate_occupation(x, ball: Ball, p: ProcessParams, cfg: PathConfig,
                         discount: float) -> Estimate:
    x0 = _x0(x, p)
    if len(ball.center) != p.d:
        raise ValueError(f"ball must be {p.d}-dimensional")
    if ball.center[-1] < ball.radius:
        raise ValueError("ball must sit inside the half-space: "
                         f"center height {ball.center[-1]} < radius {ball.radius}")
    center = np.asarray(ball.center)
    vol = ball_volume(p.d, ball.radius)

    def block(gen: np.random.Generator, nb: int) -> np.ndarray:
        occ, _, _ = _backend.simulate_occupation(
            gen, x0, p.alpha, p.m, cfg.dt, cfg.horizon, nb,
            center, ball.radius, discount)
        return occ / vol

    return _run_blocks(cfg, block, "exit_time_biased_up")


def estimate_green1(x, ball: Ball, p: ProcessParams, cfg: PathConfig) -> Estimate:
    """MC estimate of the m-discounted Green function averaged over a ball:
    E int_0^tau e^(-m t) 1_ball(X_t) dt / vol(ball). The ball average blurs
    the pointwise value by O(radius)."""
    return _estimate_occupation(x, ball, p, cfg, p.m)


def estimate_green0(x, ball: Ball, p: ProcessParams, cfg: PathConfig) -> Estimate:
    """MC estimate of the undiscounted Green function averaged over a ball:
    E int_0^tau 1_ball(X_t) dt / vol(ball). Truncation at the horizon biases
    this down; green0_tail_band bounds the missing mass."""
    return _estimate_occupation(x, ball, p, cfg, 0.0)


def estimate_interval_exit(x: float, p: ProcessParams, cfg: PathConfig) -> Estimate:
    """MC estimate of the mean exit time of the unit interval (0, 1),
    d = 1 only. Exit times are capped at the horizon."""
    if p.d != 1:
        raise ValueError(f"estimate_interval_exit requires d = 1, got d={p.d}")
    x = float(x)
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must lie in (0, 1), got {x}")
    x0 = np.array([x])

    def block(gen: np.random.Generator, nb: int) -> np.ndarray:
        tau, _, _ = _backend.simulate_exit(
            gen, x0, p.alpha, p.m, cfg.dt, cfg.horizon, nb, 1)
        return tau

    return _run_blocks(cfg, block, "exit_time_biased_up")


def _density_peak_coefficient(p: ProcessParams, t_ref: float) -> float:
    """Fitted c with p_t(0) <= c (t^(-d/2) + t^(-d/alpha)) near t_ref."""
    # keep m*t below overflow range; the ratio is flat in t there anyway
    t0 = min(t_ref, 250.0 / p.m)
    best = 0.0
    for t in (t0 / 2.0, t0, 2.0 * t0):
        peak = density_via_subordination(t, np.zeros(p.d), p)
        best = max(best, peak / (t ** (-p.d / 2.0) + t ** (-p.d / p.alpha)))
    return best


def green0_tail_band(x, ball: Ball, p: ProcessParams, cfg: PathConfig,
                     survival_at_horizon: float) -> float:
    """Upper envelope for the ball-averaged occupation mass beyond the
    horizon, i.e. the downward truncation bias of estimate_green0.

    Combines the factorized bound p_t^H(x, y) <= c (t^(-d/2) + t^(-d/alpha))
    P(tau_x > t/3) P(tau_y > t/3) with the survival envelope
    P(tau_z > t) <= C (z_d + ln t)/sqrt(t), where C is calibrated at the
    horizon from the run's own alive fraction. The t-integral is closed-form.

    Args:
        survival_at_horizon: empirical alive fraction at cfg.horizon for
            paths started at x (e.g. from estimate_survival).
    """
    x0 = _x0(x, p)
    big_t = cfg.horizon
    xd = float(x0[-1])
    yd = float(ball.center[-1])
    s_hat = min(1.0, max(survival_at_horizon, 0.0))
    if s_hat == 0.0:
        return 0.0
    # survival envelope coefficient calibrated at the horizon anchor;
    # the ball-center leg reuses it, hence the safety factor below
    coeff = s_hat * math.sqrt(big_t) / (xd + math.log(big_t))
    c_peak = _density_peak_coefficient(p, big_t)
    safety = 2.0

    def tail_poly(a: float) -> float:
        # int_T^inf t^(-a) (xd + ln(t/3)) (yd + ln(t/3)) dt, a > 1
        b = a - 1.0
        lt = math.log(big_t)
        x_sh = xd - math.log(3.0)
        y_sh = yd - math.log(3.0)
        tb = big_t ** (-b)
        i0 = tb / b
        i1 = tb * (b * lt + 1.0) / (b * b)
        i2 = tb * (b * b * lt * lt + 2.0 * b * lt + 2.0) / (b ** 3)
        return x_sh * y_sh * i0 + (x_sh + y_sh) * i1 + i2

    scale = safety * c_peak * coeff * coeff * 3.0  # (t/3)^(-1/2) twice: factor 3
    return scale * (tail_poly(p.d / 2.0 + 1.0) + tail_poly(p.d / p.alpha + 1.0))
