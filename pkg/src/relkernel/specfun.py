"""Special functions used by the kernel formulas.

Thin, validated wrappers around scipy.special. Everything here is scalar
in, scalar out; the kernel layer does its own vectorization where needed.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as _sp

__all__ = ["bessel_k", "log_bessel_k", "upper_gamma_regularized"]

# kv is reliable on this range; past it exp(-r) underflows anyway and the
# log form must be used.
_R_MIN = 0.0
_LOG_SAFE_R = 700.0


def bessel_k(nu: float, r: float) -> float:
    """Modified Bessel function of the second kind K_nu(r).

    Args:
        nu: real order; K_{-nu} = K_nu is applied, so the sign is free.
        r: argument, must be > 0.

    Returns:
        K_nu(r). For r large enough that the true value underflows a
        float64, 0.0 is returned (use log_bessel_k instead).
    """
    nu = abs(float(nu))
    r = float(r)
    if not r > _R_MIN:
        raise ValueError(f"bessel_k requires r > 0, got r={r}")
    if not math.isfinite(r):
        raise ValueError(f"bessel_k requires finite r, got r={r}")
    if r > _LOG_SAFE_R:
        # exp(log K) degrades gracefully to 0.0 instead of kv's nan
        lk = log_bessel_k(nu, r)
        return math.exp(lk) if lk > -745.0 else 0.0
    val = float(_sp.kv(nu, r))
    if math.isnan(val):
        raise ValueError(f"bessel_k failed for nu={nu}, r={r}")
    return val


def log_bessel_k(nu: float, r: float) -> float:
    """log K_nu(r), stable for large r where K_nu itself underflows.

    Uses the exponentially scaled kve: log K = log(kve) - r.
    """
    nu = abs(float(nu))
    r = float(r)
    if not r > _R_MIN or not math.isfinite(r):
        raise ValueError(f"log_bessel_k requires finite r > 0, got r={r}")
    scaled = float(_sp.kve(nu, r))
    if scaled > 0.0 and math.isfinite(scaled):
        return math.log(scaled) - r
    # kve overflows for tiny r at large nu; fall back to the small-argument
    # form K_nu(r) ~ Gamma(nu)/2 * (r/2)^(-nu) which is exact as r -> 0+
    if nu > 0.0:
        return float(_sp.gammaln(nu)) - math.log(2.0) - nu * math.log(r / 2.0)
    raise ValueError(f"log_bessel_k failed for nu={nu}, r={r}")


def upper_gamma_regularized(s: float, z: float) -> float:
    """Regularized upper incomplete gamma Q(s, z) = Gamma(s, z)/Gamma(s).

    Args:
        s: shape, must be > 0.
        z: lower limit, must be >= 0.

    Returns:
        Q(s, z) in [0, 1]; Q(s, 0) = 1.
    """
    s = float(s)
    z = float(z)
    if not s > 0.0:
        raise ValueError(f"upper_gamma_regularized requires s > 0, got s={s}")
    if z < 0.0 or not math.isfinite(z):
        raise ValueError(f"upper_gamma_regularized requires z >= 0, got z={z}")
    return float(_sp.gammaincc(s, z))
