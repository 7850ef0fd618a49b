"""Adaptive quadrature for integrands with a power singularity at zero
and for semi-infinite ranges with exponentially decaying tails.

The two patterns below cover every integral in the kernel layer:

  * integrate_power_singular: int_0^T t^(beta-1) f(t) dt with f smooth.
    The substitution t = s^(1/beta) turns the weight into a constant,
    so the transformed integrand is as smooth as f and an off-the-shelf
    adaptive rule converges at full order.
  * integrate_semi_infinite: int over [a, inf) or (-inf, b] of a function
    with (at worst sub-)exponential decay, mapped onto (0, 1] by
    u = a - log(v) resp. u = b + log(v).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate as _integrate

__all__ = [
    "QuadratureError",
    "QuadSpec",
    "integrate_power_singular",
    "integrate_semi_infinite",
]


class QuadratureError(RuntimeError):
    """Raised when the adaptive rule cannot reach the requested tolerance."""


@dataclass(frozen=True)
class QuadSpec:
    """Tolerance/budget contract for one quadrature call.

    Attributes:
        rel_tol: target relative error.
        abs_tol: target absolute error (protects integrals near zero).
        max_subdivisions: adaptive subdivision budget.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0.0 and math.isfinite(self.rel_tol)):
            raise ValueError(f"rel_tol must be a positive finite float, got {self.rel_tol}")
        if not (self.abs_tol >= 0.0 and math.isfinite(self.abs_tol)):
            raise ValueError(f"abs_tol must be a nonnegative finite float, got {self.abs_tol}")
        if self.max_subdivisions < 10:
            raise ValueError(f"max_subdivisions must be >= 10, got {self.max_subdivisions}")


_DEFAULT_SPEC = QuadSpec()


def _quad(f: Callable[[float], float], a: float, b: float, spec: QuadSpec,
          points=None) -> float:
    """scipy.integrate.quad with the spec's tolerances, raising on trouble."""
    kwargs = dict(epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                  limit=spec.max_subdivisions, full_output=True)
    if points is not None and math.isfinite(a) and math.isfinite(b):
        kwargs["points"] = points
    out = _integrate.quad(f, a, b, **kwargs)
    value, abserr = out[0], out[1]
    if len(out) >= 4:
        # message present means ier != 0; roundoff-limited results that
        # already satisfy the tolerance are accepted
        ok = abserr <= spec.abs_tol + spec.rel_tol * abs(value)
        if not ok:
            raise QuadratureError(
                f"quadrature did not converge on [{a}, {b}]: {out[3]} "
                f"(estimate {value:.6g}, error {abserr:.3g})")
    if not math.isfinite(value):
        raise QuadratureError(f"quadrature returned non-finite value on [{a}, {b}]")
    return value


def integrate_power_singular(f: Callable[[float], float], beta: float,
                             upper: float, spec: QuadSpec | None = None) -> float:
    """Integrate t^(beta-1) * f(t) over (0, upper).

    Args:
        f: smooth factor of the integrand; evaluated only on (0, upper).
        beta: singularity exponent, must be > 0. beta < 1 is the singular
            case; beta = 1 reduces to a plain integral.
        upper: upper limit, > 0; may be math.inf when f decays fast enough.
        spec: tolerances; defaults to QuadSpec().

    Returns:
        The integral value.
    """
    spec = spec or _DEFAULT_SPEC
    beta = float(beta)
    upper = float(upper)
    if not beta > 0.0:
        raise ValueError(f"integrate_power_singular requires beta > 0, got {beta}")
    if not upper > 0.0:
        raise ValueError(f"integrate_power_singular requires upper > 0, got {upper}")

    inv_beta = 1.0 / beta

    def transformed(s: float) -> float:
        # t = s^(1/beta); dt weight cancels the singular power exactly
        return f(s ** inv_beta) * inv_beta

    s_upper = math.inf if math.isinf(upper) else upper ** beta
    return _quad(transformed, 0.0, s_upper, spec)


def integrate_semi_infinite(f: Callable[[float], float],
                            lower: float | None = None,
                            upper: float | None = None,
                            spec: QuadSpec | None = None,
                            rate: float = 1.0) -> float:
    """Integrate f over [lower, inf) or (-inf, upper].

    Exactly one of lower/upper must be given; the infinite side is mapped
    onto (0, 1] by u = lower - log(v)/rate (resp. u = upper + log(v)/rate),
    which is exact bookkeeping when f decays exponentially at rate >= rate.

    Args:
        f: integrand; must decay (sub)exponentially toward the infinite end.
        lower: finite lower limit for a [lower, inf) integral.
        upper: finite upper limit for a (-inf, upper] integral.
        spec: tolerances; defaults to QuadSpec().
        rate: lower bound on the exponential decay rate of f. Passing a
            rate above the true one leaves an integrable endpoint blow-up
            in the transformed integrand, which costs accuracy.
    """
    spec = spec or _DEFAULT_SPEC
    if (lower is None) == (upper is None):
        raise ValueError("integrate_semi_infinite needs exactly one of lower/upper")
    rate = float(rate)
    if not (rate > 0.0 and math.isfinite(rate)):
        raise ValueError(f"rate must be a positive finite float, got {rate}")
    if lower is not None:
        a = float(lower)
        if not math.isfinite(a):
            raise ValueError(f"lower must be finite, got {a}")

        def transformed(v: float) -> float:
            return f(a - math.log(v) / rate) / (v * rate)
    else:
        b = float(upper)
        if not math.isfinite(b):
            raise ValueError(f"upper must be finite, got {b}")

        def transformed(v: float) -> float:
            return f(b + math.log(v) / rate) / (v * rate)

    return _quad(transformed, 0.0, 1.0, spec)
