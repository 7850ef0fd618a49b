import json
import math
import pathlib

import numpy as np
import pytest
from scipy import special

import oracles
from relkernel import kernels as K
from relkernel.kernels import (HalfSpacePoint, KernelValue, ProcessParams,
                               brownian_green_halfspace, cauchy_density,
                               density_fourier, density_via_fft,
                               density_via_subordination, exit_discount,
                               green_1d, green_halfspace, levy_density,
                               poisson_1d, poisson_halfspace, potential_m,
                               stable_green_shape, stable_limit_green,
                               stable_limit_poisson, stable_poisson_shape,
                               stable_subordinator_density)
from relkernel.quadrature import (QuadSpec, integrate_power_singular,
                                  integrate_semi_infinite)

SP = QuadSpec(rel_tol=1e-11, abs_tol=1e-15, max_subdivisions=2000)

P1 = ProcessParams(alpha=1.0, m=1.0, d=1)


# ---------------------------------------------------------------- parameters

def test_params_validation():
    with pytest.raises(ValueError):
        ProcessParams(alpha=2.0, m=1.0, d=1)
    with pytest.raises(ValueError):
        ProcessParams(alpha=0.0, m=1.0, d=1)
    with pytest.raises(ValueError):
        ProcessParams(alpha=1.0, m=0.0, d=1)
    with pytest.raises(ValueError):
        ProcessParams(alpha=1.0, m=1.0, d=0)


def test_params_derived_rates():
    p = ProcessParams(alpha=0.5, m=2.0, d=1)
    assert p.kappa == pytest.approx(4.0, rel=1e-15)
    assert p.mass_shift == pytest.approx(16.0, rel=1e-15)


def test_halfspace_point():
    pt = HalfSpacePoint((0.5, -1.5))
    assert pt.boundary_distance == -1.5
    assert pt.reflected().coords == (0.5, 1.5)
    np.testing.assert_allclose(pt.as_array(), [0.5, -1.5])


def test_kernel_value_roundtrip():
    kv = KernelValue.from_log(-2.0)
    assert kv.value == pytest.approx(math.exp(-2.0), rel=1e-12)
    deep = KernelValue.from_log(-900.0)
    assert deep.value == 0.0 and math.isfinite(deep.log_value)


# ----------------------------------------------------------- density_fourier

def test_fourier_at_zero_frequency():
    for alpha, m, t in [(0.5, 1.0, 1.0), (1.0, 2.0, 0.3), (1.7, 0.5, 4.0)]:
        p = ProcessParams(alpha=alpha, m=m, d=1)
        assert density_fourier(0.0, t, p) == pytest.approx(1.0, rel=1e-14)


def test_fourier_unit_frequency():
    assert density_fourier(1.0, 1.0, P1) == pytest.approx(math.exp(1.0 - math.sqrt(2.0)), rel=1e-14)
    # same |z| in d=2
    p2 = ProcessParams(alpha=1.0, m=1.0, d=2)
    assert density_fourier((1.0, 0.0), 1.0, p2) == pytest.approx(math.exp(1.0 - math.sqrt(2.0)), rel=1e-14)


def test_fourier_log_form():
    lg = density_fourier(3.0, 2.0, P1, log=True)
    assert lg == pytest.approx(2.0 - 2.0 * math.sqrt(10.0), rel=1e-14)


# ------------------------------------------------------------ cauchy_density

def test_cauchy_closed_form_at_origin():
    got = cauchy_density(1.0, 0.0, P1)
    want = 2.0 * (1.0 / (2.0 * math.pi)) * math.e * special.kv(1.0, 1.0)
    assert got == pytest.approx(want, rel=1e-13)


def test_cauchy_symmetry_and_positivity():
    for x in (0.3, 1.0, 7.0):
        a, b = cauchy_density(2.0, x, P1), cauchy_density(2.0, -x, P1)
        assert a == b and a > 0.0


def test_cauchy_total_mass():
    f = lambda x: cauchy_density(1.0, x, P1)
    mass = 2.0 * integrate_semi_infinite(f, lower=0.0, rate=1.0, spec=SP)
    assert mass == pytest.approx(1.0, rel=1e-10)


def test_cauchy_mass_scaling():
    # p^m_t(x) = m^d p^1_(mt)(m x) for alpha = 1
    p = ProcessParams(alpha=1.0, m=2.0, d=1)
    got = cauchy_density(2.0, 0.7, p)
    want = 2.0 * cauchy_density(4.0, 1.4, P1)
    assert got == pytest.approx(want, rel=1e-12)


def test_cauchy_domain_errors():
    with pytest.raises(ValueError):
        cauchy_density(0.0, 1.0, P1)
    with pytest.raises(ValueError):
        cauchy_density(1.0, 1.0, ProcessParams(alpha=1.5, m=1.0, d=1))


# --------------------------------------------- stable_subordinator_density

def test_subordinator_density_levy_closed_form():
    got = stable_subordinator_density(1.0, 1.0, 0.5)
    assert got == pytest.approx(math.exp(-0.25) / math.sqrt(4.0 * math.pi), rel=1e-10)
    for t in (0.5, 2.0):
        for u in (0.3, 1.0, 3.0):
            want = t * u ** -1.5 * math.exp(-t * t / (4.0 * u)) / math.sqrt(4.0 * math.pi)
            assert stable_subordinator_density(t, u, 0.5) == pytest.approx(want, rel=1e-9)


@pytest.mark.parametrize("index", [0.3, 0.5, 0.75])
def test_subordinator_density_laplace_transform(index):
    # int e^{-u} theta(1, u) du = exp(-1) for every index
    head = integrate_power_singular(
        lambda u: math.exp(-u) * stable_subordinator_density(1.0, u, index), 1.0, 1.0, SP)
    tail = integrate_semi_infinite(
        lambda u: math.exp(-u) * stable_subordinator_density(1.0, u, index),
        lower=1.0, rate=1.0, spec=SP)
    assert head + tail == pytest.approx(math.exp(-1.0), rel=1e-9)


@pytest.mark.parametrize("index", [0.4, 0.5])
def test_subordinator_density_normalization(index):
    head = integrate_power_singular(
        lambda u: stable_subordinator_density(2.0, u, index), 1.0, 1.0, SP)
    # u = 1/w folds the heavy u^{-1-index} tail into a bounded integrand
    tail = integrate_power_singular(
        lambda w: w ** (-1.0 - index) * stable_subordinator_density(2.0, 1.0 / w, index),
        index, 1.0, SP)
    assert head + tail == pytest.approx(1.0, rel=1e-9)


def test_subordinator_density_validation():
    for bad in (0.0, 1.0, -0.3):
        with pytest.raises(ValueError):
            stable_subordinator_density(1.0, 1.0, bad)
    with pytest.raises(ValueError):
        stable_subordinator_density(0.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        stable_subordinator_density(1.0, 0.0, 0.5)


# -------------------------------------------------- density_via_subordination

def test_subordination_matches_cauchy():
    for t in (0.5, 1.0, 2.0):
        for x in (0.0, 0.5, 2.0):
            got = density_via_subordination(t, x, P1)
            assert got == pytest.approx(cauchy_density(t, x, P1), rel=1e-8)


def test_subordination_peak_shape():
    # peak value tracks t^{-d/2} + t^{-d/alpha} up to a stable constant
    p = ProcessParams(alpha=1.5, m=1.0, d=1)
    ratios = []
    for t in (4.0, 16.0, 64.0):
        peak = density_via_subordination(t, 0.0, p)
        ratios.append(peak / (t ** -0.5 + t ** (-1.0 / 1.5)))
    assert all(r > 0.0 for r in ratios)
    assert max(ratios) / min(ratios) < 1.25


def test_subordination_matches_fft():
    p = ProcessParams(alpha=0.5, m=1.0, d=1)
    xs = np.array([0.0, 0.5, 1.0, 2.0])
    dense = density_via_fft(1.0, xs, p)
    for x, ref in zip(xs, dense):
        assert density_via_subordination(1.0, float(x), p) == pytest.approx(float(ref), rel=1e-6)


def test_fft_density_shape():
    xs = np.linspace(-3.0, 3.0, 7)
    vals = density_via_fft(1.0, xs, P1)
    assert vals.shape == xs.shape
    assert np.all(vals > 0.0)
    np.testing.assert_allclose(vals, vals[::-1], rtol=1e-10)


# ----------------------------------------------------------------- potential

def test_potential_closed_form():
    assert potential_m(1.0, P1) == pytest.approx(special.kv(0.0, 1.0) / math.pi, rel=1e-13)


def test_potential_scaling():
    # U^m(x) = m^{(d-alpha)/alpha} U^1(m^{1/alpha} x)
    p = ProcessParams(alpha=1.0, m=2.0, d=1)
    assert potential_m(1.0, p) == pytest.approx(potential_m(2.0, P1), rel=1e-12)
    p = ProcessParams(alpha=0.5, m=2.0, d=2)
    got = potential_m((0.3, 0.4), p)
    want = 2.0 ** ((2.0 - 0.5) / 0.5) * potential_m((1.2, 1.6), ProcessParams(alpha=0.5, m=1.0, d=2))
    assert got == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_potential_total_mass(alpha):
    # resolvent at its own mass level integrates to 1/m
    p = ProcessParams(alpha=alpha, m=1.0, d=1)
    beta = min(alpha, 1.0)
    head = integrate_power_singular(
        lambda s: s ** (1.0 - beta) * potential_m(s, p), beta, 1.0, SP)
    tail = integrate_semi_infinite(lambda s: potential_m(s, p), lower=1.0,
                                   rate=p.kappa, spec=SP)
    assert 2.0 * (head + tail) == pytest.approx(1.0, rel=1e-10)


def test_potential_diagonal_policy():
    with pytest.raises(ValueError):
        potential_m(0.0, ProcessParams(alpha=0.5, m=1.0, d=1))
    p = ProcessParams(alpha=1.5, m=1.0, d=1)
    # the approach to the diagonal value is O(sqrt(|x|)) for alpha - d = 1/2
    at_zero = potential_m(0.0, p)
    assert at_zero == pytest.approx(potential_m(1e-9, p), rel=1e-4)
    assert at_zero == pytest.approx(potential_m(1e-12, p), rel=1e-5)


def test_potential_log_form_deep_tail():
    assert potential_m(800.0, P1) == 0.0
    lg = potential_m(800.0, P1, log=True)
    assert math.isfinite(lg) and lg < -790.0


# -------------------------------------------------------------- levy_density

def test_levy_closed_form():
    assert levy_density(1.0, P1) == pytest.approx(special.kv(1.0, 1.0) / math.pi, rel=1e-13)


def test_levy_tail_shape():
    # tail mass over |x| > eps is dominated by e^{-eps} eps^{-alpha/2}
    p = ProcessParams(alpha=0.8, m=1.0, d=1)
    ratios = []
    for eps in (2.0, 4.0, 8.0):
        tail = integrate_semi_infinite(lambda s: levy_density(s, p), lower=eps,
                                       rate=p.kappa, spec=SP)
        ratios.append(tail / (math.exp(-eps) * eps ** -0.4))
    assert all(0.0 < r < ratios[0] + 1e-12 for r in ratios)
    assert ratios[2] < ratios[1] < ratios[0]


def test_levy_small_mass_limit():
    # |x|^{d+alpha} nu^m(x) converges to the stable Levy constant
    a, x = 0.7, 1.3
    const = a * 2.0 ** (a - 1.0) * math.gamma((1.0 + a) / 2.0) / (
        math.sqrt(math.pi) * math.gamma(1.0 - a / 2.0))
    coarse = levy_density(x, ProcessParams(alpha=a, m=1e-3, d=1)) * x ** (1.0 + a)
    fine = levy_density(x, ProcessParams(alpha=a, m=1e-5, d=1)) * x ** (1.0 + a)
    assert coarse == pytest.approx(const, rel=1e-6)
    assert fine == pytest.approx(const, rel=1e-9)


def test_levy_origin_rejected():
    with pytest.raises(ValueError):
        levy_density(0.0, P1)


# ---------------------------------------------------------------- poisson_1d

def test_poisson_1d_closed_form():
    got = poisson_1d(1.0, -1.0, P1)
    assert got == pytest.approx(math.exp(-2.0) / (2.0 * math.pi), rel=1e-13)
    assert got == pytest.approx(0.0215393, abs=1e-7)


def test_poisson_1d_boundary_blowup():
    # (-u)^{alpha/2} P(x, u) has a finite limit as u -> 0-
    p = ProcessParams(alpha=0.7, m=1.0, d=1)
    v5 = 1e-5 ** 0.35 * poisson_1d(1.0, -1e-5, p)
    v7 = 1e-7 ** 0.35 * poisson_1d(1.0, -1e-7, p)
    assert v5 == pytest.approx(v7, rel=1e-3)
    assert v7 > 0.0


@pytest.mark.parametrize("alpha,x", [(0.5, 1.0), (1.5, 0.5)])
def test_poisson_1d_mass_is_exit_discount(alpha, x):
    p = ProcessParams(alpha=alpha, m=1.0, d=1)
    head = integrate_power_singular(
        lambda s: s ** (alpha / 2.0) * poisson_1d(x, -s, p),
        1.0 - alpha / 2.0, 1.0, SP)
    tail = integrate_semi_infinite(lambda s: poisson_1d(x, -s, p), lower=1.0,
                                   rate=p.kappa, spec=SP)
    assert head + tail == pytest.approx(exit_discount(x, alpha), rel=1e-8)


def test_poisson_1d_domain_errors():
    with pytest.raises(ValueError):
        poisson_1d(-1.0, -1.0, P1)
    with pytest.raises(ValueError):
        poisson_1d(1.0, 0.5, P1)


# ------------------------------------------------------------------ green_1d

def test_green_1d_spot_value_vs_simpson_oracle():
    assert green_1d(1.0, 2.0, P1) == pytest.approx(oracles.green_1d_alpha1_m1_x1_y2(), rel=1e-10)
    assert abs(green_1d(1.0, 2.0, P1) - 0.1298) < 1e-3


def test_green_1d_symmetry():
    for a in (0.5, 1.0, 1.5):
        p = ProcessParams(alpha=a, m=1.0, d=1)
        assert green_1d(1.3, 0.4, p) == pytest.approx(green_1d(0.4, 1.3, p), rel=1e-14)


def test_green_1d_boundary_rate():
    # green_1d(x, y) / x^{alpha/2} tends to a finite positive limit
    p = ProcessParams(alpha=0.8, m=1.0, d=1)
    r3 = green_1d(1e-3, 1.0, p) / 1e-3 ** 0.4
    r4 = green_1d(1e-4, 1.0, p) / 1e-4 ** 0.4
    assert r4 > 0.0
    assert r3 == pytest.approx(r4, rel=2e-2)


def test_green_1d_diagonal_policy():
    assert green_1d(1.0, 1.0, ProcessParams(alpha=1.5, m=1.0, d=1)) > 0.0
    for a in (0.5, 1.0):
        with pytest.raises(ValueError):
            green_1d(1.0, 1.0, ProcessParams(alpha=a, m=1.0, d=1))


def test_green_1d_log_form_far_apart():
    lg = green_1d(1.0, 601.0, P1, log=True)
    assert math.isfinite(lg) and lg < -590.0


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("xy", [(1.0, 2.0), (0.7, 0.9)])
def test_green_1d_compensator_identity(alpha, xy):
    # free potential minus its harmonic extension equals the Green function
    x, y = xy
    p = ProcessParams(alpha=alpha, m=1.0, d=1)
    head = integrate_power_singular(
        lambda s: s ** (alpha / 2.0) * poisson_1d(x, -s, p) * potential_m(s + y, p),
        1.0 - alpha / 2.0, 1.0, SP)
    tail = integrate_semi_infinite(
        lambda s: poisson_1d(x, -s, p) * potential_m(s + y, p),
        lower=1.0, rate=p.kappa, spec=SP)
    swept = potential_m(x - y, p) - head - tail
    assert swept == pytest.approx(green_1d(x, y, p), rel=1e-9)


# --------------------------------------------------------- poisson_halfspace

def test_poisson_halfspace_d3_spot():
    p = ProcessParams(alpha=1.0, m=1.0, d=3)
    got = poisson_halfspace((0.0, 0.0, 1.0), (0.0, 0.0, -1.0), p)
    want = 2.0 * (1.0 / math.pi) * (1.0 / (2.0 * math.pi)) ** 1.5 \
        * special.kv(1.5, 2.0) / 2.0 ** 1.5
    assert got == pytest.approx(want, rel=1e-12)
    assert abs(got - 2.571e-3) < 1e-6


def test_poisson_halfspace_reduces_to_1d():
    for a in (0.5, 1.0, 1.5):
        p = ProcessParams(alpha=a, m=1.0, d=1)
        for x, u in [(1.0, -1.0), (0.3, -2.5)]:
            assert poisson_halfspace((x,), (u,), p) == pytest.approx(
                poisson_1d(x, u, p), rel=1e-12)


def test_poisson_halfspace_scaling():
    # P^m(x, u) = m^{d/alpha} P^1(m^{1/alpha} x, m^{1/alpha} u)
    p = ProcessParams(alpha=0.5, m=3.0, d=2)
    p_ref = ProcessParams(alpha=0.5, m=1.0, d=2)
    lam = 3.0 ** 2.0
    x, u = (0.2, 0.8), (-0.1, -0.4)
    got = poisson_halfspace(x, u, p)
    want = 3.0 ** (2.0 / 0.5) * poisson_halfspace(
        tuple(lam * c for c in x), tuple(lam * c for c in u), p_ref)
    assert got == pytest.approx(want, rel=1e-10)


def test_poisson_halfspace_domain_errors():
    p = ProcessParams(alpha=1.0, m=1.0, d=2)
    with pytest.raises(ValueError):
        poisson_halfspace((0.0, -1.0), (0.0, -1.0), p)
    with pytest.raises(ValueError):
        poisson_halfspace((0.0, 1.0), (0.0, 0.5), p)


# ----------------------------------------------------------- green_halfspace

def test_green_halfspace_reduces_to_1d():
    for a in (0.5, 1.0, 1.5):
        p = ProcessParams(alpha=a, m=1.0, d=1)
        # separations on both sides of the near-diagonal branch switch
        for x, y in [(1.0, 2.0), (1.0, 1.0 + 2e-3), (1.0, 1.0 + 5e-4)]:
            assert green_halfspace((x,), (y,), p) == pytest.approx(
                green_1d(x, y, p), rel=1e-10)


def test_green_halfspace_symmetry():
    p = ProcessParams(alpha=1.0, m=2.0, d=3)
    x, y = (0.1, -0.3, 0.8), (0.5, 0.2, 1.7)
    assert green_halfspace(x, y, p) == pytest.approx(green_halfspace(y, x, p), rel=1e-12)


def test_green_halfspace_scaling():
    # G^m(x, y) = m^{(d-alpha)/alpha} G^1(m^{1/alpha} x, m^{1/alpha} y)
    p = ProcessParams(alpha=1.0, m=2.0, d=2)
    p_ref = ProcessParams(alpha=1.0, m=1.0, d=2)
    x, y = (0.0, 0.7), (0.4, 1.1)
    got = green_halfspace(x, y, p)
    want = 2.0 * green_halfspace(tuple(2.0 * c for c in x), tuple(2.0 * c for c in y), p_ref)
    assert got == pytest.approx(want, rel=1e-10)


def test_green_halfspace_lower_bound_spot():
    # explicit proof constant at d=2, alpha=1, |x-y| <= 1
    p = ProcessParams(alpha=1.0, m=1.0, d=2)
    c = 2.0 ** 0.0 / ((2.0 * math.pi) * math.gamma(0.5) ** 2) \
        * special.kv(1.0, 2.0) / 2.0 ** 0.5 * 2.0
    for x, y in [((0.0, 0.4), (0.3, 0.8)), ((0.0, 1.2), (0.5, 1.5))]:
        xd, yd = x[-1], y[-1]
        bound = c * min(4.0 * xd * yd, 1.0) ** 0.5
        assert green_halfspace(x, y, p) >= bound


def test_green_halfspace_log_form():
    p = ProcessParams(alpha=1.0, m=1.0, d=2)
    lg = green_halfspace((0.0, 1.0), (0.0, 520.0), p, log=True)
    assert math.isfinite(lg) and lg < -500.0


def test_green_halfspace_diagonal_policy():
    with pytest.raises(ValueError):
        green_halfspace((0.0, 1.0), (0.0, 1.0), ProcessParams(alpha=1.0, m=1.0, d=2))


# ------------------------------------------------------------- exit_discount

def test_exit_discount_limits_and_oracle():
    assert exit_discount(1e-12, 0.7) == pytest.approx(1.0, abs=1e-4)
    assert exit_discount(1.0, 1.0) == pytest.approx(oracles.exit_discount_alpha1(1.0), rel=1e-12)
    assert exit_discount(1.0, 1.0) == pytest.approx(0.15729921, abs=1e-8)
    assert exit_discount(0.5, 1.5) == pytest.approx(special.gammaincc(0.75, 0.5), rel=1e-12)


def test_exit_discount_monotone():
    zs = np.geomspace(1e-3, 30.0, 25)
    for a in (0.5, 1.0, 1.5):
        vals = [exit_discount(float(z), a) for z in zs]
        assert all(1.0 >= u > v > 0.0 or (u > v) for u, v in zip(vals, vals[1:]))
    with pytest.raises(ValueError):
        exit_discount(-0.1, 1.0)


def test_exit_discount_log_deep_tail():
    lg = exit_discount(700.0, 1.0, log=True)
    assert math.isfinite(lg) and lg < -690.0


# ------------------------------------------------------------- stable limits

def test_stable_green_shape_closed_form():
    assert stable_green_shape(1.0, 2.0, 1.0, 1) == pytest.approx(
        oracles.stable_limit_green_1d_alpha1_x1_y2(), rel=1e-10)


def test_stable_limit_green_ratio_constant():
    pairs = [((0.0, 0.5), (0.4, 1.0)), ((0.2, 1.5), (-0.3, 0.7))]
    ratios = [stable_limit_green(x, y, 1.0, 2) / stable_green_shape(x, y, 1.0, 2)
              for x, y in pairs]
    assert ratios[0] == pytest.approx(ratios[1], rel=1e-3)


def test_stable_green_boundary_vanishing():
    # shape scales like x_d^{alpha/2} as x_d -> 0
    y = (0.5, 1.0)
    hi = stable_green_shape((0.0, 1e-4), y, 1.0, 2)
    lo = stable_green_shape((0.0, 1e-6), y, 1.0, 2)
    assert hi / lo == pytest.approx(100.0 ** 0.5, rel=2e-3)


def test_stable_limit_poisson_homogeneity():
    x, u = (0.0, 1.0), (0.5, -0.5)
    one = stable_limit_poisson(x, u, 1.0, 2)
    double = stable_limit_poisson(tuple(2 * c for c in x), tuple(2 * c for c in u), 1.0, 2)
    assert one == pytest.approx(4.0 * double, rel=3e-3)


def test_stable_limit_poisson_classical_1d_shape():
    ratios = []
    for x, u in [(1.0, -1.0), (0.5, -2.0), (2.0, -0.3)]:
        shape = (x / -u) ** 0.75 / (x - u)
        ratios.append(stable_limit_poisson((x,), (u,), 1.5, 1) / shape)
    assert ratios[0] == pytest.approx(ratios[1], rel=1e-3)
    assert ratios[0] == pytest.approx(ratios[2], rel=1e-3)


def test_stable_limit_calibration_golden():
    golden = json.loads(
        (pathlib.Path(__file__).parent / "golden" / "stable_limit_calibration.json").read_text())
    for entry in golden["green"]:
        got = stable_limit_green(entry["x"], entry["y"], entry["alpha"], entry["d"])
        assert got == pytest.approx(entry["value"], rel=1e-6), entry
    for entry in golden["poisson"]:
        got = stable_limit_poisson(entry["x"], entry["u"], entry["alpha"], entry["d"])
        assert got == pytest.approx(entry["value"], rel=1e-6), entry


# --------------------------------------------------- brownian_green_halfspace

def test_brownian_green_1d():
    assert brownian_green_halfspace((1.0,), (3.0,), 1) == 1.0
    assert brownian_green_halfspace((3.0,), (1.0,), 1) == 1.0


def test_brownian_green_2d_closed_form():
    got = brownian_green_halfspace((0.0, 1.0), (0.0, 2.0), 2)
    assert got == pytest.approx(math.log(3.0) / (2.0 * math.pi), rel=1e-14)


def test_brownian_green_3d_image_formula():
    got = brownian_green_halfspace((0.0, 0.0, 1.0), (0.0, 0.0, 2.0), 3)
    assert got == pytest.approx((1.0 - 1.0 / 3.0) / (4.0 * math.pi), rel=1e-14)


def test_brownian_green_boundary_vanishing():
    assert brownian_green_halfspace((0.0, 1e-8), (0.0, 1.0), 2) < 1e-7
    with pytest.raises(ValueError):
        brownian_green_halfspace((0.0, 1.0), (0.0, 1.0), 2)
