import math

import numpy as np
import pytest

from lambertscatter import (
    DomainError,
    GeneralizedBarrier,
    LambertBarrier,
    PhysicsConfig,
    SqrtRatioBarrier,
    StepBarrier,
    TanhBarrier,
    evaluate,
    evaluate_derivative,
    rho,
    z_of_x,
)

def bisect_product_log(t, lo=0.0, hi=1.0):
    """Independent oracle: solve w e^w = t by bisection."""
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if mid * math.exp(mid) < t:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ----------------------------------------------------------------------
# configuration types
# ----------------------------------------------------------------------

def test_physics_defaults(physics):
    assert physics.coupling == pytest.approx(1.0)


def test_physics_validation():
    with pytest.raises(DomainError):
        PhysicsConfig(m=-1.0)
    with pytest.raises(DomainError):
        PhysicsConfig(hbar=0.0)


def test_barrier_validation():
    with pytest.raises(DomainError):
        LambertBarrier(v0=1.0, sigma=0.0)
    with pytest.raises(DomainError):
        TanhBarrier(v0=1.0, d=-0.5)
    with pytest.raises(DomainError):
        GeneralizedBarrier(v0=0.0, v1=1.0, v3=0.0, sigma=-1.0)
    with pytest.raises(DomainError):
        SqrtRatioBarrier(v0=0.0, v1=1.0, z0=0.0)


def test_generalized_quadratic_constraint_by_construction(physics):
    # v2 + v3 = (2m/hbar^2) sigma^2 v3^2 must hold identically
    for v3 in (0.0, 0.2, -0.7, 3.0):
        for sigma in (0.3, 1.0, 2.5):
            b = GeneralizedBarrier(v0=0.1, v1=1.0, v3=v3, sigma=sigma)
            assert b.v2(physics) + v3 == physics.coupling * sigma**2 * v3**2


# ----------------------------------------------------------------------
# coordinate transformation
# ----------------------------------------------------------------------

def test_z_at_origin_is_omega():
    omega = bisect_product_log(1.0)
    assert z_of_x(0.0, 1.0) == pytest.approx(omega, abs=1e-14)
    assert z_of_x(3.0, 2.0, x0=3.0) == pytest.approx(omega, abs=1e-14)


def test_z_far_right_vanishes():
    assert z_of_x(50.0, 1.0) == pytest.approx(0.0, abs=1e-20)
    assert z_of_x(50.0, 1.0) > 0.0


def test_z_defining_identity_where_representable():
    # z e^z = e^{-(x-x0)/sigma} to 1e-12 relative
    for u in np.linspace(-600.0, 700.0, 131):
        z = z_of_x(-u, 1.0)  # u = -(x - x0)/sigma with sigma = 1, x0 = 0
        lhs = math.log(z) + z  # compare in log form: ln(z e^z) vs u
        assert abs(lhs - u) <= 1e-12 * max(abs(u), 1.0)


def test_z_identity_direct_small_range():
    for u in np.linspace(-30.0, 30.0, 61):
        z = z_of_x(-u, 1.0)
        assert abs(z * math.exp(z) - math.exp(u)) <= 1e-12 * math.exp(u)


def test_z_array_matches_scalar():
    xs = np.linspace(-120.0, 40.0, 400)
    za = z_of_x(xs, 0.7, x0=0.3)
    for x, z in zip(xs, za):
        assert z == pytest.approx(z_of_x(float(x), 0.7, x0=0.3), rel=1e-14)


def test_z_strictly_decreasing():
    xs = np.linspace(-50.0, 50.0, 500)
    zs = z_of_x(xs, 1.3)
    assert np.all(np.diff(zs) < 0.0)


def test_z_left_asymptote_trend():
    # |z - (L - ln L)| must decay as the asymptotic form takes over
    errs = []
    for L in (20.0, 40.0, 80.0, 160.0):
        z = z_of_x(-L, 1.0)
        errs.append(abs(z - (L - math.log(L))))
    assert all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))
    assert errs[-1] < 0.05


def test_rho_value_and_sign():
    assert rho(1.0, 1.0) == pytest.approx(-0.5, abs=1e-15)
    assert rho(1e-8, 2.0) == pytest.approx(-5e-9, rel=1e-8)
    for z in (0.1, 1.0, 10.0):
        assert rho(z, 0.5) < 0.0


@pytest.mark.parametrize("x", [0.0, 2.0, -2.0])
def test_rho_matches_finite_difference(x):
    h = 1e-5
    fd = (z_of_x(x + h, 1.0) - z_of_x(x - h, 1.0)) / (2.0 * h)
    z = z_of_x(x, 1.0)
    assert abs(fd - rho(z, 1.0)) <= 1e-8


# ----------------------------------------------------------------------
# potential evaluation
# ----------------------------------------------------------------------

def test_lambert_fixed_point(physics, barrier211):
    omega = bisect_product_log(1.0)
    v = evaluate(barrier211, 0.0, physics)
    assert v == pytest.approx(1.0 / (1.0 + omega), abs=1e-14)
    assert abs(v - 0.638) < 5e-4


def test_lambert_limits(physics, barrier211):
    assert evaluate(barrier211, -80.0, physics) == pytest.approx(0.0, abs=2e-2)
    assert evaluate(barrier211, 80.0, physics) == pytest.approx(1.0, abs=1e-12)


def test_lambert_monotone_increasing(physics, barrier211):
    xs = np.linspace(-40.0, 40.0, 800)
    vs = evaluate(barrier211, xs, physics)
    assert np.all(np.diff(vs) > 0.0)


def test_lambert_left_tail_coulomb_like(physics):
    # |V(x) - v0 sigma/(sigma - x)| / V(x) -> 0 going left
    b = LambertBarrier(v0=1.0, sigma=1.0)
    rel = []
    for x in (-50.0, -200.0, -800.0, -3200.0):
        v = evaluate(b, x, physics)
        rel.append(abs(v - b.v0 * b.sigma / (b.sigma - x)) / v)
    assert all(r2 < r1 for r1, r2 in zip(rel, rel[1:]))
    assert rel[-1] < 1e-2


def test_lambert_right_tail_exponential(physics):
    # ln(v0 - V) should fall with slope -1/sigma
    b = LambertBarrier(v0=1.0, sigma=0.8)
    xs = np.linspace(5.0 * b.sigma, 18.0 * b.sigma, 30)
    gap = b.v0 - np.asarray(evaluate(b, xs, physics))
    slope = np.polyfit(xs, np.log(gap), 1)[0]
    assert slope == pytest.approx(-1.0 / b.sigma, rel=0.02)


def test_step_values(physics):
    b = StepBarrier(v0=2.0)
    assert evaluate(b, -1e-9, physics) == 0.0
    assert evaluate(b, 0.0, physics) == 2.0
    assert evaluate(b, 3.0, physics) == 2.0


def test_tanh_values(physics):
    b = TanhBarrier(v0=1.0, d=1.0)
    assert evaluate(b, 0.0, physics) == pytest.approx(0.5, abs=1e-15)
    assert evaluate(b, -1e4, physics) == pytest.approx(0.0, abs=1e-300)
    # matches the plain logistic form where that form is representable
    for x in (-5.0, -0.3, 2.7):
        assert evaluate(b, x, physics) == pytest.approx(
            1.0 / (1.0 + math.exp(-x)), rel=1e-14
        )


def test_generalized_reduces_to_lambert(physics):
    gb = GeneralizedBarrier(v0=0.0, v1=0.7, v3=0.0, sigma=1.3)
    lb = LambertBarrier(v0=0.7, sigma=1.3)
    for x in np.linspace(-20.0, 20.0, 41):
        assert evaluate(gb, float(x), physics) == pytest.approx(
            evaluate(lb, float(x), physics), rel=1e-15, abs=1e-300
        )


def test_sqrt_ratio_values_and_domain(physics):
    b = SqrtRatioBarrier(v0=0.5, v1=2.0, z0=1.0)
    # hand value at x = 4: 0.5 + 2/(2 (2+1)) = 0.5 + 1/3
    assert evaluate(b, 4.0, physics) == pytest.approx(0.5 + 1.0 / 3.0, rel=1e-15)
    with pytest.raises(DomainError):
        evaluate(b, 0.0, physics)
    with pytest.raises(DomainError):
        evaluate(b, -1.0, physics)


@pytest.mark.parametrize(
    "barrier",
    [
        LambertBarrier(v0=1.0, sigma=0.8),
        TanhBarrier(v0=1.0, d=0.6),
        GeneralizedBarrier(v0=0.1, v1=1.0, v3=0.2, sigma=1.1),
        SqrtRatioBarrier(v0=0.5, v1=2.0, z0=1.0),
    ],
)
def test_analytic_derivative_matches_finite_difference(barrier, physics):
    h = 1e-6
    for x in (0.5, 1.7, 4.0):
        fd = (evaluate(barrier, x + h, physics) - evaluate(barrier, x - h, physics)) / (2 * h)
        assert evaluate_derivative(barrier, x, physics) == pytest.approx(fd, rel=1e-7, abs=1e-12)
