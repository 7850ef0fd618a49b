"""Closed-form kernels of the relativistic stable process on the half-space.

Conventions, fixed once for the whole package:

  * alpha in (0, 2) is the stability index, m > 0 the mass parameter,
    d >= 1 the space dimension.
  * The driving Brownian motion has characteristic function exp(-t|z|^2),
    i.e. variance 2t per coordinate; every constant below depends on this.
  * kappa = m^(1/alpha) is the spatial tempering rate: all kernels decay
    like exp(-kappa |x|) far out.
  * The half-space is H = {x in R^d : x_d > 0}; points "outside" have
    x_d < 0. The boundary itself is polar and is rejected as input.

All evaluators are scalar and validate their domain. Kernels with an
exponential envelope accept log=True and then return the log value, which
stays finite long after the plain value has underflowed.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from relkernel.quadrature import QuadSpec, integrate_power_singular, integrate_semi_infinite
from relkernel.specfun import bessel_k, log_bessel_k, upper_gamma_regularized

__all__ = [
    "ProcessParams",
    "HalfSpacePoint",
    "KernelValue",
    "cauchy_density",
    "density_fourier",
    "stable_subordinator_density",
    "density_via_subordination",
    "density_via_fft",
    "potential_m",
    "levy_density",
    "poisson_1d",
    "green_1d",
    "poisson_halfspace",
    "green_halfspace",
    "exit_discount",
    "stable_green_shape",
    "stable_poisson_shape",
    "stable_limit_green",
    "stable_limit_poisson",
    "brownian_green_halfspace",
]

# Quadrature contract used by every kernel integral. Tight enough that two
# independent evaluations agree to 1e-10 relative (the scaling identity is
# tested at that level).
_KQUAD = QuadSpec(rel_tol=1e-11, abs_tol=1e-16, max_subdivisions=2000)

# |x - y| below which Green functions switch from the rescaled (t-) form,
# whose upper limit blows up like |x-y|^-2, to the absolute (s-) form.
_NEAR_DIAGONAL = 1e-3

_LOG2 = math.log(2.0)


def _check_scale_ca1() -> float:
    """Test hook: multiply the Poisson-kernel constant by a factor.

    The consistency suites must detect a corrupted constant; setting
    RELKERNEL_CHECK_SCALE_CA1=1.01 makes the sweep and mass checks fail.
    """
    raw = os.environ.get("RELKERNEL_CHECK_SCALE_CA1", "")
    return float(raw) if raw else 1.0


@dataclass(frozen=True)
class ProcessParams:
    """Index, mass and dimension of one process instance.

    Attributes:
        alpha: stability index, 0 < alpha < 2.
        m: mass (tempering) parameter, m > 0.
        d: space dimension, integer >= 1.
    """

    alpha: float
    m: float
    d: int = 1

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 2.0):
            raise ValueError(f"alpha must lie in (0, 2), got {self.alpha}")
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise ValueError(f"m must be positive and finite, got {self.m}")
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"d must be an integer >= 1, got {self.d}")
        object.__setattr__(self, "d", int(self.d))

    @property
    def kappa(self) -> float:
        """Spatial decay rate m^(1/alpha)."""
        return self.m ** (1.0 / self.alpha)

    @property
    def mass_shift(self) -> float:
        """Subordinator tempering rate m^(2/alpha)."""
        return self.m ** (2.0 / self.alpha)


@dataclass(frozen=True)
class HalfSpacePoint:
    """Point of R^d tagged with its distance to the boundary hyperplane."""

    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coords) == 0:
            raise ValueError("HalfSpacePoint needs at least one coordinate")
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))

    @property
    def boundary_distance(self) -> float:
        """Signed distance to the hyperplane {x_d = 0} (last coordinate)."""
        return self.coords[-1]

    def reflected(self) -> "HalfSpacePoint":
        """Mirror image across the boundary hyperplane."""
        return HalfSpacePoint(self.coords[:-1] + (-self.coords[-1],))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


@dataclass(frozen=True)
class KernelValue:
    """A kernel evaluation carried in both linear and log scale."""

    value: float
    log_value: float

    @classmethod
    def from_log(cls, log_value: float) -> "KernelValue":
        return cls(math.exp(log_value) if log_value > -745.0 else 0.0, log_value)


def _as_point(x, d: int, name: str) -> np.ndarray:
    """Coerce scalars, sequences, arrays, or HalfSpacePoint to shape (d,)."""
    if isinstance(x, HalfSpacePoint):
        arr = x.as_array()
    else:
        arr = np.atleast_1d(np.asarray(x, dtype=float))
    if arr.shape != (d,):
        raise ValueError(f"{name} must have {d} coordinate(s), got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite, got {arr}")
    return arr


def _interior(x, p: ProcessParams, name: str) -> np.ndarray:
    arr = _as_point(x, p.d, name)
    if not arr[-1] > 0.0:
        raise ValueError(f"{name} must lie in the open half-space (last coord > 0), "
                         f"got {arr[-1]}")
    return arr


def _exterior(u, p: ProcessParams, name: str) -> np.ndarray:
    arr = _as_point(u, p.d, name)
    if not arr[-1] < 0.0:
        raise ValueError(f"{name} must lie outside the closed half-space "
                         f"(last coord < 0), got {arr[-1]}")
    return arr


def _ret(log_value: float, log: bool) -> float:
    if log:
        return log_value
    return math.exp(log_value) if log_value > -745.0 else 0.0


# ---------------------------------------------------------------------------
# free-space kernels


def density_fourier(z, t: float, p: ProcessParams, log: bool = False) -> float:
    """Characteristic function of the process at time t, evaluated at z.

    exp(m t - t (|z|^2 + m^(2/alpha))^(alpha/2)); equals 1 at z = 0.
    """
    zv = _as_point(z, p.d, "z")
    if not t > 0.0:
        raise ValueError(f"t must be positive, got {t}")
    zz = float(np.dot(zv, zv))
    lv = p.m * t - t * (zz + p.mass_shift) ** (p.alpha / 2.0)
    return _ret(lv, log)


def cauchy_density(t: float, x, p: ProcessParams, log: bool = False) -> float:
    """Transition density at index alpha = 1 (relativistic Cauchy case).

    p_t(x) = 2 (m/(2 pi))^((d+1)/2) t e^(m t)
             K_((d+1)/2)(m sqrt(|x|^2+t^2)) / (|x|^2+t^2)^((d+1)/4).
    """
    if p.alpha != 1.0:
        raise ValueError(f"cauchy_density requires alpha = 1, got alpha={p.alpha}")
    if not t > 0.0:
        raise ValueError(f"t must be positive, got {t}")
    xv = _as_point(x, p.d, "x")
    nu = (p.d + 1) / 2.0
    rho2 = float(np.dot(xv, xv)) + t * t
    rho = math.sqrt(rho2)
    lv = (_LOG2 + nu * math.log(p.m / (2.0 * math.pi)) + math.log(t) + p.m * t
          + log_bessel_k(nu, p.m * rho) - (nu / 2.0) * math.log(rho2))
    return _ret(lv, log)


def potential_m(x, p: ProcessParams, log: bool = False) -> float:
    """m-resolvent kernel: int_0^inf e^(-m t) p_t(x) dt.

    Closed form C(alpha,d) m^((d-alpha)/(2 alpha))
    K_((d-alpha)/2)(kappa |x|) / |x|^((d-alpha)/2) with
    C(alpha,d) = 2^(1-(d+alpha)/2) / (Gamma(alpha/2) pi^(d/2)).
    Finite at x = 0 only when d < alpha.
    """
    xv = _as_point(x, p.d, "x")
    r = float(np.linalg.norm(xv))
    nu = (p.d - p.alpha) / 2.0
    log_c = ((1.0 - (p.d + p.alpha) / 2.0) * _LOG2
             - math.lgamma(p.alpha / 2.0) - (p.d / 2.0) * math.log(math.pi))
    if r == 0.0:
        if p.d >= p.alpha:
            raise ValueError(f"potential_m diverges at x=0 for d={p.d} >= alpha={p.alpha}")
        # K_(-mu)(kr) r^mu -> Gamma(mu) 2^(mu-1) k^(-mu) as r -> 0 (mu = -nu),
        # leaving a net kappa^(2 nu) = m^((d-alpha)/alpha) in the value
        lv = (log_c + (-nu - 1.0) * _LOG2 + math.lgamma(-nu)
              + ((p.d - p.alpha) / p.alpha) * math.log(p.m))
        return _ret(lv, log)
    # nu*log(kappa) implements the mass prefactor m^((d-alpha)/(2 alpha)) = kappa^nu
    lv = (log_c + nu * math.log(p.kappa) + log_bessel_k(nu, p.kappa * r)
          - nu * math.log(r))
    return _ret(lv, log)


def levy_density(x, p: ProcessParams, log: bool = False) -> float:
    """Jump intensity nu(x) of the process.

    alpha 2^((alpha-d)/2) / (pi^(d/2) Gamma(1-alpha/2))
    * (kappa/|x|)^((d+alpha)/2) K_((d+alpha)/2)(kappa |x|).
    """
    xv = _as_point(x, p.d, "x")
    r = float(np.linalg.norm(xv))
    if r == 0.0:
        raise ValueError("levy_density is singular at x = 0")
    nu = (p.d + p.alpha) / 2.0
    lv = (math.log(p.alpha) + ((p.alpha - p.d) / 2.0) * _LOG2
          - (p.d / 2.0) * math.log(math.pi) - math.lgamma(1.0 - p.alpha / 2.0)
          + nu * (math.log(p.kappa) - math.log(r)) + log_bessel_k(nu, p.kappa * r))
    return _ret(lv, log)


# ---------------------------------------------------------------------------
# subordination route to the transition density


def _kanter_log_a(v: float, sigma: float) -> float:
    """log of Kanter's a(v) on (0,1) for the one-sided sigma-stable law."""
    v = max(v, 1e-300)
    return ((sigma / (1.0 - sigma)) * math.log(math.sin(sigma * math.pi * v))
            + math.log(math.sin((1.0 - sigma) * math.pi * v))
            - math.log(math.sin(math.pi * v)) / (1.0 - sigma))


def stable_subordinator_density(t: float, u: float, index: float) -> float:
    """Density at u of the one-sided stable law with Laplace exponent
    lambda^index at time t (so the Laplace transform is exp(-t lambda^index)).

    Evaluated through the single-integral representation
    g(x) = index/(1-index) x^(-1/(1-index))
           int_0^1 a(v) exp(-x^(-index/(1-index)) a(v)) dv
    followed by the time scaling theta(t, u) = t^(-1/index) g(t^(-1/index) u).
    """
    if not (0.0 < index < 1.0):
        raise ValueError(f"index must lie in (0, 1), got {index}")
    if not t > 0.0:
        raise ValueError(f"t must be positive, got {t}")
    if not u > 0.0:
        raise ValueError(f"u must be positive, got {u}")
    scale = t ** (-1.0 / index)
    x = scale * u
    c = x ** (-index / (1.0 - index))

    def f(v: float) -> float:
        la = _kanter_log_a(v, index)
        arg = la - c * math.exp(la)
        return math.exp(arg) if arg > -745.0 else 0.0

    integral = integrate_power_singular(f, 1.0, 1.0, _KQUAD)
    g = (index / (1.0 - index)) * x ** (-1.0 / (1.0 - index)) * integral
    return scale * g


def density_via_subordination(t: float, x, p: ProcessParams) -> float:
    """Transition density p_t(x) as a subordinated Gaussian mixture.

    p_t(x) = e^(m t) int_0^inf theta_(alpha/2)(t, u) e^(-m^(2/alpha) u)
             (4 pi u)^(-d/2) exp(-|x|^2/(4u)) du,
    computed on the subordinator's natural scale u = t^(2/alpha) w.
    """
    xv = _as_point(x, p.d, "x")
    if not t > 0.0:
        raise ValueError(f"t must be positive, got {t}")
    sigma = p.alpha / 2.0
    r2 = float(np.dot(xv, xv))
    tscale = t ** (1.0 / sigma)
    m2a = p.mass_shift
    half_d = p.d / 2.0
    log_gauss_c = -half_d * math.log(4.0 * math.pi)

    def integrand(w: float) -> float:
        u = tscale * w
        theta = stable_subordinator_density(1.0, w, sigma)
        lg = log_gauss_c - half_d * math.log(u) - r2 / (4.0 * u) - m2a * u
        return theta * (math.exp(lg) if lg > -745.0 else 0.0)

    outer = QuadSpec(rel_tol=1e-11, abs_tol=1e-300, max_subdivisions=2000)
    val = integrate_power_singular(integrand, 1.0, math.inf, outer)
    return math.exp(p.m * t) * val


def density_via_fft(t: float, xs, p: ProcessParams) -> np.ndarray:
    """Transition density on a set of 1-D points by FFT inversion of
    density_fourier. Only d = 1 is supported.

    Returns an array of densities matching xs elementwise.
    """
    if p.d != 1:
        raise ValueError(f"density_via_fft supports d = 1 only, got d={p.d}")
    if not t > 0.0:
        raise ValueError(f"t must be positive, got {t}")
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    kappa = p.kappa
    # frequency cutoff: the envelope exp(m t - t z^alpha) must be below
    # 1e-18 at the edge
    z_max = ((p.m * t + 42.0) / t) ** (1.0 / p.alpha)
    # spatial period: tails decay like exp(-kappa|x|); pick L so the alias
    # from the periodic images is below 1e-16, and wide enough for xs
    spread = 8.0 * t ** (1.0 / p.alpha) + 8.0 * math.sqrt(t / p.m) if p.alpha >= 1.0 \
        else 8.0 * t ** (1.0 / p.alpha)
    L = max(2.0 * (42.0 + p.m * t) / kappa, spread, 4.0 * float(np.max(np.abs(xs))) + 20.0 / kappa)
    n = 1 << max(10, math.ceil(math.log2(z_max * L / math.pi)))
    if n > (1 << 24):
        raise ValueError("density_via_fft grid is unreasonably large; "
                         "check t, m, alpha")
    dz = 2.0 * math.pi / L
    k = np.arange(n)
    z = (k - n // 2) * dz
    phi = np.exp(p.m * t - t * (z * z + p.mass_shift) ** (p.alpha / 2.0))
    dx = L / n
    xg = (k - n // 2) * dx
    # continuous inverse transform on the shifted grids:
    # f(x_j) = dz/(2 pi) sum_k phi(z_k) exp(-i z_k x_j)
    pre = np.exp(1j * math.pi * (k - n // 2))
    vals = np.fft.fft(phi * pre) * pre * (dz / (2.0 * math.pi))
    dens = np.real(vals)
    from scipy.interpolate import CubicSpline

    spline = CubicSpline(xg, dens)
    return np.asarray(spline(xs), dtype=float)


# ---------------------------------------------------------------------------
# half-space kernels


def poisson_1d(x: float, u: float, p: ProcessParams, log: bool = False) -> float:
    """Exit density of the half-line (0, inf): chance density of landing at
    u < 0 when leaving from x > 0, discounted at rate m.

    sin(pi alpha/2)/pi (x/-u)^(alpha/2) e^(-kappa (x-u)) / (x-u).
    """
    if p.d != 1:
        raise ValueError(f"poisson_1d requires d = 1, got d={p.d}")
    x = float(x)
    u = float(u)
    if not x > 0.0:
        raise ValueError(f"x must be positive, got {x}")
    if not u < 0.0:
        raise ValueError(f"u must be negative, got {u}")
    lv = (math.log(math.sin(math.pi * p.alpha / 2.0) * _check_scale_ca1() / math.pi)
          + (p.alpha / 2.0) * (math.log(x) - math.log(-u))
          - p.kappa * (x - u) - math.log(x - u))
    return _ret(lv, log)


def _green_1d_log(x: float, y: float, p: ProcessParams) -> float:
    alpha, kappa = p.alpha, p.kappa
    delta = abs(x - y)
    log_pref_c = -alpha * _LOG2 - 2.0 * math.lgamma(alpha / 2.0)
    if delta >= _NEAR_DIAGONAL:
        # rescaled form: upper limit 4xy/delta^2, envelope e^(-kappa delta)
        a = kappa * delta
        upper = 4.0 * x * y / (delta * delta)

        def f(tt: float) -> float:
            root = math.sqrt(1.0 + tt)
            return math.exp(-a * tt / (root + 1.0)) / root

        integral = integrate_power_singular(f, alpha / 2.0, upper, _KQUAD)
        return (log_pref_c + (alpha - 1.0) * math.log(delta) - a + math.log(integral))
    # absolute form: upper limit 4 kappa^2 x y, no blow-up near the diagonal
    a = kappa * delta
    upper = 4.0 * kappa * kappa * x * y
    if delta == 0.0:
        if alpha <= 1.0:
            raise ValueError("green_1d diverges on the diagonal for alpha <= 1")

        def f0(s: float) -> float:
            return math.exp(-math.sqrt(s))

        integral = integrate_power_singular(f0, (alpha - 1.0) / 2.0, upper, _KQUAD)
        return ((1.0 - alpha) * math.log(kappa) + log_pref_c + math.log(integral))

    a2 = a * a

    def f(s: float) -> float:
        root = math.sqrt(s + a2)
        return math.exp(-s / (root + a)) / root

    integral = integrate_power_singular(f, alpha / 2.0, upper, _KQUAD)
    return ((1.0 - alpha) * math.log(kappa) + log_pref_c - a + math.log(integral))


def green_1d(x: float, y: float, p: ProcessParams, log: bool = False) -> float:
    """Green function of the half-line (0, inf) for the m-killed process.

    |x-y|^(alpha-1) / (2^alpha Gamma(alpha/2)^2)
    int_0^(4xy/(x-y)^2) e^(-kappa|x-y| sqrt(t+1)) t^(alpha/2-1) (t+1)^(-1/2) dt,
    evaluated through the absolute-variable form near the diagonal.
    Diagonal input is accepted only for alpha > 1.
    """
    if p.d != 1:
        raise ValueError(f"green_1d requires d = 1, got d={p.d}")
    x = float(x)
    y = float(y)
    if not (x > 0.0 and y > 0.0):
        raise ValueError(f"x and y must be positive, got x={x}, y={y}")
    return _ret(_green_1d_log(x, y, p), log)


def poisson_halfspace(x, u, p: ProcessParams, log: bool = False) -> float:
    """Exit density of the half-space H: chance density of landing at u
    (u_d < 0) when leaving from x (x_d > 0), discounted at rate m.

    2 sin(pi alpha/2)/pi (kappa/(2 pi))^(d/2) (x_d/-u_d)^(alpha/2)
    K_(d/2)(kappa|x-u|) / |x-u|^(d/2).
    """
    xv = _interior(x, p, "x")
    uv = _exterior(u, p, "u")
    r = float(np.linalg.norm(xv - uv))
    lv = (_LOG2 + math.log(math.sin(math.pi * p.alpha / 2.0) * _check_scale_ca1() / math.pi)
          + (p.d / 2.0) * math.log(p.kappa / (2.0 * math.pi))
          + (p.alpha / 2.0) * (math.log(xv[-1]) - math.log(-uv[-1]))
          + log_bessel_k(p.d / 2.0, p.kappa * r) - (p.d / 2.0) * math.log(r))
    return _ret(lv, log)


def _log_kve(nu: float, r: float) -> float:
    """log of e^r K_nu(r); finite for all r > 0."""
    return log_bessel_k(nu, r) + r


def _green_halfspace_log(xv: np.ndarray, yv: np.ndarray, p: ProcessParams) -> float:
    alpha, kappa, d = p.alpha, p.kappa, p.d
    delta = float(np.linalg.norm(xv - yv))
    hh = 4.0 * xv[-1] * yv[-1]
    log_pref_c = ((1.0 - alpha) * _LOG2 - (d / 2.0) * math.log(2.0 * math.pi)
                  - 2.0 * math.lgamma(alpha / 2.0))
    if delta == 0.0:
        if alpha <= d:
            raise ValueError(f"green_halfspace diverges on the diagonal for "
                             f"alpha={alpha} <= d={d}")
        upper = kappa * kappa * hh
        c12 = math.log(math.pi / 2.0) / 2.0

        # K_(1/2)(sqrt(s))/s^(1/4) = sqrt(pi/2) e^(-sqrt(s)) / sqrt(s)
        def f0(s: float) -> float:
            return math.exp(c12 - math.sqrt(s))

        integral = integrate_power_singular(f0, (alpha - d) / 2.0, upper, _KQUAD)
        return ((d - alpha) * math.log(kappa) + log_pref_c + math.log(integral))
    a = kappa * delta
    if delta >= _NEAR_DIAGONAL:
        upper = hh / (delta * delta)

        def f(tt: float) -> float:
            root = math.sqrt(1.0 + tt)
            z = a * root
            return math.exp(_log_kve(d / 2.0, z) - a * tt / (root + 1.0)
                            - (d / 4.0) * math.log1p(tt))

        integral = integrate_power_singular(f, alpha / 2.0, upper, _KQUAD)
        return (log_pref_c + (d / (2.0 * alpha)) * math.log(p.m)
                + (alpha - d / 2.0) * math.log(delta) - a + math.log(integral))
    a2 = a * a
    upper = kappa * kappa * hh

    def fs(s: float) -> float:
        z2 = s + a2
        z = math.sqrt(z2)
        return math.exp(_log_kve(d / 2.0, z) - s / (z + a) - (d / 4.0) * math.log(z2))

    integral = integrate_power_singular(fs, alpha / 2.0, upper, _KQUAD)
    return ((d - alpha) * math.log(kappa) + log_pref_c - a + math.log(integral))


def green_halfspace(x, y, p: ProcessParams, log: bool = False) -> float:
    """Green function of the half-space H for the m-killed process.

    2^(1-alpha) m^(d/(2 alpha)) |x-y|^(alpha-d/2) / ((2 pi)^(d/2) Gamma(alpha/2)^2)
    int_0^(4 x_d y_d/|x-y|^2) t^(alpha/2-1) (t+1)^(-d/4)
        K_(d/2)(kappa |x-y| sqrt(t+1)) dt,
    with an equivalent absolute-variable form near the diagonal. Symmetric
    in (x, y); diagonal input accepted only when alpha > d.
    """
    xv = _interior(x, p, "x")
    yv = _interior(y, p, "y")
    return _ret(_green_halfspace_log(xv, yv, p), log)


def exit_discount(z: float, alpha: float, log: bool = False) -> float:
    """Expected unit-rate discount at the exit time of H for the unit-mass
    process started at height z: E e^(-tau) = Q(alpha/2, z), the regularized
    upper incomplete gamma function.
    """
    z = float(z)
    alpha = float(alpha)
    if not (0.0 < alpha < 2.0):
        raise ValueError(f"alpha must lie in (0, 2), got {alpha}")
    if z < 0.0:
        raise ValueError(f"z must be >= 0, got {z}")
    s = alpha / 2.0
    if z <= 600.0:
        val = upper_gamma_regularized(s, z)
        if not log:
            return val
        if val > 0.0:
            return math.log(val)
    # far tail: Gamma(s,z) ~ z^(s-1) e^(-z) (1 + (s-1)/z + (s-1)(s-2)/z^2)
    corr = 1.0 + (s - 1.0) / z + (s - 1.0) * (s - 2.0) / (z * z)
    lv = (s - 1.0) * math.log(z) - z - math.lgamma(s) + math.log(corr)
    return _ret(lv, log)


# ---------------------------------------------------------------------------
# massless (stable) limits and the Brownian comparison kernel


def stable_green_shape(x, y, alpha: float, d: int) -> float:
    """Shape of the m -> 0 limit of green_halfspace, without its constant:

    |x-y|^(alpha-d) int_0^(4 x_d y_d/|x-y|^2) t^(alpha/2-1) (t+1)^(-d/2) dt.
    """
    pp = ProcessParams(alpha=alpha, m=1.0, d=d)
    xv = _interior(x, pp, "x")
    yv = _interior(y, pp, "y")
    delta = float(np.linalg.norm(xv - yv))
    if delta == 0.0:
        raise ValueError("stable_green_shape requires x != y")
    upper = 4.0 * xv[-1] * yv[-1] / (delta * delta)
    half_d = d / 2.0

    def f(tt: float) -> float:
        return (1.0 + tt) ** (-half_d)

    integral = integrate_power_singular(f, alpha / 2.0, upper, _KQUAD)
    return delta ** (alpha - d) * integral


def stable_poisson_shape(x, u, alpha: float, d: int) -> float:
    """Shape of the m -> 0 limit of poisson_halfspace, without its constant:
    (x_d / -u_d)^(alpha/2) |x-u|^(-d)."""
    pp = ProcessParams(alpha=alpha, m=1.0, d=d)
    xv = _interior(x, pp, "x")
    uv = _exterior(u, pp, "u")
    r = float(np.linalg.norm(xv - uv))
    return (xv[-1] / -uv[-1]) ** (alpha / 2.0) * r ** (-float(d))


_LIMIT_MASSES = (1e-3, 1e-4, 1e-5)


def _aitken(seq: tuple[float, float, float]) -> float:
    g0, g1, g2 = seq
    d1, d2 = g1 - g0, g2 - g1
    denom = d2 - d1
    if denom == 0.0 or abs(denom) < 1e-14 * abs(g2):
        return g2
    acc = g2 - d2 * d2 / denom
    # a diverging acceleration (non-geometric residuals) must not make
    # things worse than the plainest estimate
    if not math.isfinite(acc):
        return g2
    return acc


def stable_limit_green(x, y, alpha: float, d: int) -> float:
    """m -> 0 limit of green_halfspace, by vanishing-mass extrapolation
    (Aitken acceleration over m = 1e-3, 1e-4, 1e-5)."""
    vals = tuple(green_halfspace(x, y, ProcessParams(alpha=alpha, m=mm, d=d))
                 for mm in _LIMIT_MASSES)
    return _aitken(vals)


def stable_limit_poisson(x, u, alpha: float, d: int) -> float:
    """m -> 0 limit of poisson_halfspace, by vanishing-mass extrapolation
    (Aitken acceleration over m = 1e-3, 1e-4, 1e-5)."""
    vals = tuple(poisson_halfspace(x, u, ProcessParams(alpha=alpha, m=mm, d=d))
                 for mm in _LIMIT_MASSES)
    return _aitken(vals)


def brownian_green_halfspace(x, y, d: int) -> float:
    """Green function of the half-space for the driving Brownian motion
    (characteristic function e^(-t|z|^2)), by reflection:

      d = 1: x ∧ y
      d = 2: (1/(2 pi)) log(|x*-y| / |x-y|)
      d >= 3: Gamma(d/2-1)/(4 pi^(d/2)) (|x-y|^(2-d) - |x*-y|^(2-d))

    where x* is the reflection of x across the boundary.
    """
    if int(d) != d or d < 1:
        raise ValueError(f"d must be an integer >= 1, got {d}")
    d = int(d)
    pp = ProcessParams(alpha=1.0, m=1.0, d=d)
    xv = _interior(x, pp, "x")
    yv = _interior(y, pp, "y")
    if d == 1:
        return float(min(xv[0], yv[0]))
    xs = xv.copy()
    xs[-1] = -xs[-1]
    r = float(np.linalg.norm(xv - yv))
    rs = float(np.linalg.norm(xs - yv))
    if r == 0.0:
        raise ValueError("brownian_green_halfspace requires x != y for d >= 2")
    if d == 2:
        return math.log(rs / r) / (2.0 * math.pi)
    c = math.gamma(d / 2.0 - 1.0) / (4.0 * math.pi ** (d / 2.0))
    return c * (r ** (2 - d) - rs ** (2 - d))
