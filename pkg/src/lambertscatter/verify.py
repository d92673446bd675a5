"""Acceptance-check suite: every headline claim, runnable as one report.

Each check returns :class:`CheckResult` rows with the measured figure and
its tolerance; ``run_checks`` executes the whole battery at either the
``full`` grids or the reduced ``quick`` grids (same tolerances) and
``build_report`` wraps the outcome in a JSON-serializable document.

The suite is deliberately redundant with the pytest tests: this module is
what ships to users (``lambert-scatter verify``), the tests pin it in CI.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import heun
from .analytic import (
    BasisCoefficients,
    basis_functions,
    hypergeom_ode_residual,
    reflection_closed_form,
    reflection_step,
    reflection_tanh,
    reflection_wavenumbers,
    scatter_params,
    small_sigma_expansion,
    wave_numbers,
    wavefunction,
)
from .oracle import default_config, extract_reflection, integrate_schrodinger, schrodinger_residual
from .potentials import GeneralizedBarrier, LambertBarrier, PhysicsConfig, StepBarrier, TanhBarrier, evaluate
from .specfun import complex_pow, kummer_m, lambert_w, log_gamma, tricomi_u
from .sweeps import reflection_sweep

__all__ = ["CheckResult", "run_checks", "build_report", "QUICK", "FULL"]

QUICK = "quick"
FULL = "full"

_PHYSICS = PhysicsConfig()  # m = 1/2, hbar = 1


@dataclass
class CheckResult:
    """One pass/fail line of the acceptance report."""

    name: str
    status: bool
    measured: float
    tolerance: float
    comparator: str = "<="
    detail: str = ""

    def as_json(self) -> dict:
        d = asdict(self)
        d["status"] = "pass" if self.status else "fail"
        return d


def _leq(name, measured, tolerance, detail=""):
    return CheckResult(name, bool(measured <= tolerance), float(measured),
                       float(tolerance), "<=", detail)


def _geq(name, measured, tolerance, detail=""):
    return CheckResult(name, bool(measured >= tolerance), float(measured),
                       float(tolerance), ">=", detail)


# ----------------------------------------------------------------------
# 1. the two closed forms are one formula
# ----------------------------------------------------------------------

def check_reflection_formula_identity(level: str) -> list[CheckResult]:
    n = 10 if level == FULL else 4
    t0 = time.perf_counter()
    v0 = 1.0
    worst = 0.0
    for e_ratio in np.linspace(1.01, 10.0, n):
        for sigma in np.linspace(0.05, 5.0, n):
            barrier = LambertBarrier(v0=v0, sigma=float(sigma))
            p = scatter_params(float(e_ratio) * v0, barrier, _PHYSICS)
            r_param = reflection_closed_form(p).r
            r_wn = reflection_wavenumbers(wave_numbers(float(e_ratio) * v0, v0, _PHYSICS),
                                          float(sigma)).r
            worst = max(worst, abs(r_param - r_wn) / r_wn)
    elapsed = time.perf_counter() - t0
    return [
        _leq("reflection_formula_identity", worst, 1e-12,
             f"{n * n}-point (E, sigma) grid"),
        _leq("reflection_formula_identity_runtime_s", elapsed, 1.0),
    ]


# ----------------------------------------------------------------------
# 2. oracle cross-validation
# ----------------------------------------------------------------------

def check_oracle_cross_validation(level: str) -> list[CheckResult]:
    if level == FULL:
        sigmas, energies = (0.15, 0.5, 1.0), (1.1, 1.5, 2.0, 3.0, 5.0)
    else:
        sigmas, energies = (0.15, 1.0), (1.5, 3.0)
    t0 = time.perf_counter()
    worst = 0.0
    worst_at = ""
    for sigma in sigmas:
        barrier = LambertBarrier(v0=1.0, sigma=sigma)
        for E in energies:
            r_closed = reflection_wavenumbers(wave_numbers(E, 1.0, _PHYSICS), sigma).r
            cfg = default_config(E, barrier, _PHYSICS)
            samples = integrate_schrodinger(
                lambda xs: evaluate(barrier, xs, _PHYSICS), E, cfg.grid, _PHYSICS
            )
            r_oracle = extract_reflection(samples, E, barrier, cfg, _PHYSICS).r
            gap = abs(r_closed - r_oracle) / r_closed
            if gap > worst:
                worst, worst_at = gap, f"sigma={sigma}, E={E}"
    elapsed = time.perf_counter() - t0
    return [
        _leq("oracle_cross_validation", worst, 1e-3, f"worst at {worst_at}"),
        _leq("oracle_cross_validation_runtime_s", elapsed, 60.0),
    ]


# ----------------------------------------------------------------------
# 3. oracle calibration on the exactly known baselines
# ----------------------------------------------------------------------

def check_oracle_calibration(level: str) -> list[CheckResult]:
    out = []
    E, v0 = 2.0, 1.0
    step = StepBarrier(v0=v0)
    cfg = default_config(E, step, _PHYSICS)
    samples = integrate_schrodinger(lambda xs: evaluate(step, xs, _PHYSICS),
                                    E, cfg.grid, _PHYSICS)
    r_num = extract_reflection(samples, E, step, cfg, _PHYSICS).r
    r_exact = reflection_step(wave_numbers(E, v0, _PHYSICS)).r
    out.append(_leq("oracle_step_calibration", abs(r_num - r_exact) / r_exact, 1e-4,
                    "discontinuity on a grid node"))

    E, d = 1.5, 0.5
    tanh = TanhBarrier(v0=v0, d=d)
    cfg = default_config(E, tanh, _PHYSICS)
    samples = integrate_schrodinger(lambda xs: evaluate(tanh, xs, _PHYSICS),
                                    E, cfg.grid, _PHYSICS)
    r_num = extract_reflection(samples, E, tanh, cfg, _PHYSICS).r
    r_exact = reflection_tanh(wave_numbers(E, v0, _PHYSICS), d).r
    out.append(_leq("oracle_tanh_calibration", abs(r_num - r_exact) / r_exact, 1e-4))
    return out


# ----------------------------------------------------------------------
# 4. limits
# ----------------------------------------------------------------------

def check_limits(level: str) -> list[CheckResult]:
    out = []
    # (a) threshold: all but a sliver reflects
    v0, sigma = 1.0, 0.15
    p = scatter_params(v0 * (1.0 + 1e-8), LambertBarrier(v0=v0, sigma=sigma), _PHYSICS)
    out.append(_geq("threshold_total_reflection", reflection_closed_form(p).r, 0.999,
                    f"E = v0 (1 + 1e-8), sigma={sigma}"))

    # (b) no barrier, no reflection (oracle path; closed form gives exactly 0)
    free = LambertBarrier(v0=0.0, sigma=1.0)
    E = 2.0
    cfg = default_config(E, free, _PHYSICS)
    samples = integrate_schrodinger(lambda xs: evaluate(free, xs, _PHYSICS),
                                    E, cfg.grid, _PHYSICS)
    out.append(_leq("free_particle_reflection", extract_reflection(samples, E, free, cfg, _PHYSICS).r,
                    1e-10))

    # (c) narrow-barrier slope: (R_step - R)/(sigma R_step) -> 2 pi k2
    E, v0 = 2.0, 1.0
    k = wave_numbers(E, v0, _PHYSICS)
    r_sp = reflection_step(k).r
    sigmas = np.array([1e-2, 1e-3, 1e-4])
    ratios = []
    for sg in sigmas:
        r = reflection_wavenumbers(k, float(sg)).r
        ratios.append((r_sp - r) / (float(sg) * r_sp))
    slope_fit = np.polyfit(sigmas, ratios, 1)[1]  # intercept at sigma -> 0
    target = 2.0 * math.pi * k.k2_real
    out.append(_leq("narrow_width_slope", abs(slope_fit - target) / target, 0.02,
                    f"fit {slope_fit:.6f} vs 2 pi k2 = {target:.6f}"))
    return out


# ----------------------------------------------------------------------
# 5. the fixed-point value at x = x0
# ----------------------------------------------------------------------

def _bisect_omega() -> float:
    """Solve w e^w = 1 on [0, 1] by bisection to ~1e-15."""
    lo, hi = 0.0, 1.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if mid * math.exp(mid) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def check_fixed_point(level: str) -> list[CheckResult]:
    barrier = LambertBarrier(v0=1.0, sigma=1.0)
    ratio = evaluate(barrier, 0.0, _PHYSICS) / barrier.v0
    omega = _bisect_omega()
    return [
        _leq("fixed_point_three_decimals", abs(ratio - 0.638), 5e-4,
             "V(x0)/v0 vs 0.638"),
        _leq("fixed_point_vs_bisection", abs(ratio - 1.0 / (1.0 + omega)), 1e-9),
    ]


# ----------------------------------------------------------------------
# 6. ordering against the matched-width smooth step
# ----------------------------------------------------------------------

def check_matched_width_ordering(level: str) -> list[CheckResult]:
    E, v0 = 1.5, 1.0
    k = wave_numbers(E, v0, _PHYSICS)
    worst = 0.0
    for sigma in (0.5, 1.0, 2.0, 4.0, 8.0, 12.0):
        r_l = reflection_wavenumbers(k, sigma).r
        r_ht = reflection_tanh(k, sigma).r
        worst = max(worst, r_l / r_ht)
    return [CheckResult("matched_width_ordering", worst < 1.0, worst, 1.0, "<",
                        "max R_lambert/R_tanh over sigma = d grid")]


# ----------------------------------------------------------------------
# 7. the analytic solution really solves the wave equation
# ----------------------------------------------------------------------

def check_analytic_residuals(level: str) -> list[CheckResult]:
    out = []
    if level == FULL:
        cases = ((2.0, 1.0, 1.0), (1.5, 1.0, 0.5), (5.0, 1.0, 0.3))
        span, n = 15.0, 1501
    else:
        cases = ((2.0, 1.0, 1.0),)
        span, n = 8.0, 801
    worst = 0.0
    worst_at = ""
    for E, v0, sigma in cases:
        barrier = LambertBarrier(v0=v0, sigma=sigma)
        pts = np.linspace(-span, span, n)
        for c1, c2 in ((1.0, 0.0), (0.0, 1.0)):
            coeffs = BasisCoefficients(c1, c2)

            def psi_fn(x, _b=barrier, _E=E, _c=coeffs):
                return wavefunction(x, _E, _b, _c, _PHYSICS)[0]

            res = schrodinger_residual(psi_fn, lambda xs, _b=barrier: evaluate(_b, xs, _PHYSICS),
                                       E, pts, _PHYSICS)
            if res > worst:
                worst, worst_at = res, f"(E,v0,sigma)=({E},{v0},{sigma}), c=({c1},{c2})"
    out.append(_leq("wave_equation_residual_analytic", worst, 1e-6, f"worst at {worst_at}"))

    worst = 0.0
    p = scatter_params(2.0, LambertBarrier(v0=1.0, sigma=1.0), _PHYSICS)
    member_m, member_u = basis_functions(p)
    for z in (0.5, 2.0):
        worst = max(worst, hypergeom_ode_residual(member_m, p, z))
        worst = max(worst, hypergeom_ode_residual(member_u, p, z))
    out.append(_leq("hypergeometric_ode_residual", worst, 1e-9, "both fundamental solutions"))
    return out


# ----------------------------------------------------------------------
# 8. derivative-transform machinery
# ----------------------------------------------------------------------

def check_transform_machinery(level: str) -> list[CheckResult]:
    out = []
    # (a) the derived equation for w really annihilates the transformed series
    gb = GeneralizedBarrier(v0=0.0, v1=1.0, v3=0.2, sigma=1.0)
    p = heun.map_params(3.0, gb, _PHYSICS).biconfluent()
    worst = 0.0
    n_samples = 10 if level == FULL else 5
    for z in np.linspace(0.2, 2.0, n_samples):
        u, du, d2u, d3u = heun.biconfluent_series_derivatives(p, complex(z), 3)
        w, dw, d2w = heun.w_transform_derivatives(p, complex(z), u, du, d2u, d3u)
        z0 = p.z0
        f = (p.gamma_h - 1.0) / z + p.delta_h + p.eps_h * z + 1.0 / (z - z0)
        g = p.alpha_h * (z - z0) / z
        res = d2w - f * dw + g * w
        scale = abs(d2w) + abs(f * dw) + abs(g * w)
        worst = max(worst, abs(res) / scale)
    out.append(_leq("derivative_transform_residual", worst, 1e-8,
                    "transformed series vs its derived equation"))

    # (b) invariant matching: two conforming barriers and a perturbed control
    lam_like = GeneralizedBarrier(v0=0.0, v1=1.0, v3=0.0, sigma=1.0)
    p1 = heun.map_params(2.0, lam_like, _PHYSICS).biconfluent()
    gap1 = heun.invariant_match(p1, 0.5, lam_like, 2.0, _PHYSICS)[2]
    p2 = heun.map_params(3.0, gb, _PHYSICS).biconfluent()
    gap2 = heun.invariant_match(p2, 1.0, gb, 3.0, _PHYSICS)[2]
    out.append(_leq("invariant_match_conforming", max(gap1, gap2), 1e-9))
    control = GeneralizedBarrier(v0=0.0, v1=1.0, v3=3.0, sigma=1.0)
    pc = heun.map_params(12.0, control, _PHYSICS).biconfluent()
    gap_neg = heun.invariant_match(pc, 0.7, control, 12.0, _PHYSICS,
                                   v2=control.v2(_PHYSICS) * 1.01)[2]
    out.append(_geq("invariant_match_negative_control", gap_neg, 1e-3,
                    "quadratic coefficient off the constraint by 1%"))

    # (c) the conditionally integrable claim: v3 != 0 still solves the wave equation
    n = 1201 if level == FULL else 601
    pts = np.linspace(-10.0, 10.0, n)

    def hpsi(x):
        return heun.heun_wavefunction(x, 3.0, gb, _PHYSICS)[0]

    res = schrodinger_residual(hpsi, lambda xs: evaluate(gb, xs, _PHYSICS), 3.0, pts, _PHYSICS)
    out.append(_leq("conditional_barrier_residual", res, 1e-6, "v3 = 0.2 barrier"))

    # (d) v3 = 0 reduction matches the direct construction (same 1D solution space)
    E, v0, sigma = 2.0, 1.0, 1.0
    gb0 = GeneralizedBarrier(v0=0.0, v1=v0, v3=0.0, sigma=sigma)
    lb = LambertBarrier(v0=v0, sigma=sigma)
    p = scatter_params(E, lb, _PHYSICS)
    d = p.delta_real
    a_u = 1j * p.a_real
    b_u = 1j * d
    # coefficients projecting the basis back onto the exponent-zero solution
    g_hi = log_gamma(a_u - b_u + 1.0)
    c2 = _cexp(g_hi - log_gamma(1.0 - b_u))
    c1 = -_cexp(g_hi + log_gamma(b_u - 1.0) - log_gamma(1.0 - b_u) - log_gamma(a_u))
    coeffs = BasisCoefficients(c1, c2)
    worst = 0.0
    for x in np.linspace(-5.0, 5.0, 21 if level == FULL else 9):
        ph, dph = heun.heun_wavefunction(float(x), E, gb0, _PHYSICS)
        pa, dpa = wavefunction(float(x), E, lb, coeffs, _PHYSICS)
        wr = ph * dpa - pa * dph
        scale = abs(ph * dpa) + abs(pa * dph)
        worst = max(worst, abs(wr) / scale)
    out.append(_leq("reduction_wronskian", worst, 1e-8,
                    "generalized (v3=0) vs direct construction"))
    return out


def _cexp(z):
    import cmath

    return cmath.exp(z)


# ----------------------------------------------------------------------
# 9. special-function suite
# ----------------------------------------------------------------------

def check_specfun_suite(level: str) -> list[CheckResult]:
    out = []
    n = 50 if level == FULL else 15
    worst = 0.0
    for t in np.logspace(-6.0, 6.0, n):
        w = lambert_w(float(t))
        worst = max(worst, abs(w * math.exp(w) - t) / t)
    out.append(_leq("lambert_w_identity", worst, 1e-13, "log-spaced grid 1e-6..1e6"))

    worst = 0.0
    for y in (0.1, 0.5, 1.0, 2.0, 5.0):
        mod2 = abs(_cexp(2.0 * log_gamma(1.0 + 1j * y).real))  # |Gamma|^2 via 2 Re log
        target = math.pi * y / math.sinh(math.pi * y)
        worst = max(worst, abs(mod2 - target))
    out.append(_leq("gamma_modulus_identity", worst, 1e-12))

    worst_m = 0.0
    worst_u = 0.0
    rng = np.random.default_rng(20240915)
    for _ in range(12 if level == FULL else 6):
        E = float(rng.uniform(1.2, 5.0))
        sigma = float(rng.uniform(0.2, 1.2))
        zz = float(rng.uniform(0.1, 4.0))
        p = scatter_params(E, LambertBarrier(v0=1.0, sigma=sigma), _PHYSICS)
        w = 1j * p.s * zz
        for a, b in ((1.0 + 1j * (p.a_real - p.delta_real), 2.0 - 1j * p.delta_real),
                     (1j * p.a_real, 1j * p.delta_real)):
            m0 = kummer_m(a, b, w)
            m1 = (a / b) * kummer_m(a + 1.0, b + 1.0, w)
            m2 = (a * (a + 1.0) / (b * (b + 1.0))) * kummer_m(a + 2.0, b + 2.0, w)
            res = w * m2 + (b - w) * m1 - a * m0
            scale = max(abs(w * m2), abs((b - w) * m1), abs(a * m0))
            worst_m = max(worst_m, abs(res) / scale)
            u0 = tricomi_u(a, b, w)
            u1 = -a * tricomi_u(a + 1.0, b + 1.0, w)
            u2 = a * (a + 1.0) * tricomi_u(a + 2.0, b + 2.0, w)
            res = w * u2 + (b - w) * u1 - a * u0
            scale = max(abs(w * u2), abs((b - w) * u1), abs(a * u0))
            worst_u = max(worst_u, abs(res) / scale)
    out.append(_leq("kummer_ode_residual", worst_m, 1e-10, "contiguous-relation derivatives"))
    out.append(_leq("tricomi_ode_residual", worst_u, 1e-10, "contiguous-relation derivatives"))
    return out


# ----------------------------------------------------------------------
# 10. figure-data regeneration trends
# ----------------------------------------------------------------------

def check_figure_sweep(level: str) -> list[CheckResult]:
    n = 200 if level == FULL else 60
    energies = np.linspace(1.01, 4.0, n)
    rows = reflection_sweep(1.0, 0.15, energies, _PHYSICS, method="closed",
                            compare=("step", "tanh"), d=0.5)
    r_l = np.array([row["R_lambert"] for row in rows])
    r_sp = np.array([row["R_step"] for row in rows])
    r_ht = np.array([row["R_tanh"] for row in rows])
    out = [
        _leq("figure_sweep_monotone", float(np.max(np.diff(r_l))), 0.0,
             "R(E) strictly decreasing"),
        CheckResult("figure_sweep_below_step", bool(np.all(r_l < r_sp)),
                    float(np.max(r_l / r_sp)), 1.0, "<"),
        # Stated requirement; physically the steep sigma=0.15 barrier reflects
        # MORE than the smoother d=0.5 tanh shape at every sampled energy, so
        # this check fails by design of the comparison setup.  See README.
        CheckResult("figure_sweep_below_tanh", bool(np.all(r_l < r_ht)),
                    float(np.max(r_l / r_ht)), 1.0, "<"),
    ]
    return out


# ----------------------------------------------------------------------
# driver
# ----------------------------------------------------------------------

_CHECKS = (
    check_reflection_formula_identity,
    check_oracle_cross_validation,
    check_oracle_calibration,
    check_limits,
    check_fixed_point,
    check_matched_width_ordering,
    check_analytic_residuals,
    check_transform_machinery,
    check_specfun_suite,
    check_figure_sweep,
)


def run_checks(level: str = FULL) -> list[CheckResult]:
    """Run the whole battery at the given level ('quick' or 'full')."""
    if level not in (QUICK, FULL):
        raise ValueError(f"unknown verification level {level!r}")
    results: list[CheckResult] = []
    for fn in _CHECKS:
        results.extend(fn(level))
    return results


def build_report(command: str, params: dict, checks: list[CheckResult],
                 wall_ms: float) -> dict:
    """JSON-serializable run report; overall status is the AND of all checks."""
    return {
        "command": command,
        "params": params,
        "checks": [c.as_json() for c in checks],
        "passed": all(c.status for c in checks),
        "wall_ms": wall_ms,
    }
