"""Bi-confluent Heun machinery behind the generalized barrier.

The canonical equation used throughout is

    u'' + (gamma/z + delta + eps*z) u' + (alpha*z - q)/z u = 0,        (H)

with a regular singular point at 0 and an irregular one at infinity.  The
function w = z^gamma e^{delta z + eps z^2/2} u' then obeys

    w'' - ((gamma-1)/z + delta + eps*z + 1/(z - z0)) w' + alpha (z - z0)/z w = 0,

where z0 = q/alpha is an apparent singularity.  Matching the invariant of
that derived equation against the one of the wave equation under the
coordinate map dz/dx = -(z/sigma)/(1+z) (so z0 = -1, q = -alpha) produces
the generalized barrier of :class:`~lambertscatter.potentials.GeneralizedBarrier`
together with the parameter map implemented in :func:`map_params`; the
physical solution is psi = z^{gamma/2} e^{(delta z + eps z^2/2)/2} du/dz.

At eps = 0 (always the case here) the exponent-zero Frobenius solution of
(H) collapses onto an elementary exponential times a Kummer function, which
is how :func:`heun_wavefunction` actually evaluates it; the power series of
:func:`biconfluent_series` stays available as the independent cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, IllConditionedError
from .potentials import GeneralizedBarrier, PhysicsConfig, rho, z_of_x
from .specfun import complex_pow, kummer_m

__all__ = [
    "BiconfluentParams",
    "GeneralizedSolutionParams",
    "SeriesValue",
    "HypergeometricReduction",
    "biconfluent_series",
    "biconfluent_series_derivatives",
    "w_transform",
    "w_transform_derivatives",
    "invariant_match",
    "map_params",
    "reduce_to_hypergeometric",
    "heun_wavefunction",
]


@dataclass(frozen=True)
class BiconfluentParams:
    """Coefficients (gamma_h, delta_h, eps_h, alpha_h, q_h) of the canonical equation."""

    gamma_h: complex
    delta_h: complex
    eps_h: complex
    alpha_h: complex
    q_h: complex

    @property
    def z0(self) -> complex:
        if self.alpha_h == 0:
            raise DomainError("z0 = q/alpha undefined for alpha_h = 0")
        return self.q_h / self.alpha_h


@dataclass(frozen=True)
class GeneralizedSolutionParams:
    """eps = 0, q = -alpha specialization produced by :func:`map_params`."""

    gamma_h: complex
    delta_h: complex
    alpha_h: complex

    def biconfluent(self) -> BiconfluentParams:
        return BiconfluentParams(
            gamma_h=self.gamma_h,
            delta_h=self.delta_h,
            eps_h=0.0,
            alpha_h=self.alpha_h,
            q_h=-self.alpha_h,
        )


@dataclass(frozen=True)
class SeriesValue:
    """Partial sum of the Frobenius series plus its truncation estimate."""

    value: complex
    truncation: float


@dataclass(frozen=True)
class HypergeometricReduction:
    """u(z) = exp(exponent_coeff * z) * M(a; b; argument_scale * z)."""

    a: complex
    b: complex
    exponent_coeff: complex
    argument_scale: complex


# ----------------------------------------------------------------------
# Frobenius series of the canonical equation
# ----------------------------------------------------------------------

def _series_coefficients(p: BiconfluentParams, terms: int) -> list[complex]:
    """Exponent-zero Frobenius coefficients, c_0 = 1.

    Inserting sum c_n z^n into (H) gives the three-term recurrence
    c_{n+1} = [(q - delta*n) c_n - (alpha + eps*(n-1)) c_{n-1}]
              / ((n+1)(n+gamma)).
    """
    g = complex(p.gamma_h)
    n_int = round(g.real)
    if n_int <= 0 and abs(g - n_int) < 1e-12:
        raise DomainError(
            f"biconfluent series: gamma_h={g} is a non-positive integer; "
            "the exponent-zero Frobenius solution degenerates"
        )
    cs = [1.0 + 0.0j, complex(p.q_h) / g]
    for n in range(1, terms):
        nxt = ((p.q_h - p.delta_h * n) * cs[n]
               - (p.alpha_h + p.eps_h * (n - 1)) * cs[n - 1]) / ((n + 1) * (n + g))
        cs.append(nxt)
    return cs


def biconfluent_series(p: BiconfluentParams, z: complex, terms: int = 160) -> SeriesValue:
    """Truncated exponent-zero Frobenius solution at z, normalized to u(0) = 1."""
    cs = _series_coefficients(p, terms)
    total = 0.0 + 0.0j
    zp = 1.0 + 0.0j
    last = 0.0
    for c in cs:
        term = c * zp
        total += term
        last = abs(term)
        zp *= z
    return SeriesValue(value=total, truncation=last / max(abs(total), 1e-300))


def biconfluent_series_derivatives(p: BiconfluentParams, z: complex, order: int,
                                   terms: int = 160) -> tuple[complex, ...]:
    """(u, u', ..., u^(order)) by term-wise differentiation of the series."""
    cs = _series_coefficients(p, terms)
    out = []
    for k in range(order + 1):
        total = 0.0 + 0.0j
        zp = 1.0 + 0.0j
        for n in range(k, len(cs)):
            fac = 1.0
            for j in range(k):
                fac *= n - j
            total += cs[n] * fac * zp
            zp *= z
        out.append(total)
    return tuple(out)


# ----------------------------------------------------------------------
# derivative transform
# ----------------------------------------------------------------------

def _gauge_factor(p: BiconfluentParams, z: complex) -> complex:
    return complex_pow(z, p.gamma_h) * cmath.exp(p.delta_h * z + p.eps_h * z * z / 2.0)


def w_transform(p: BiconfluentParams, z: complex, u: complex, du: complex):
    """(w, w') for w = z^gamma e^{delta z + eps z^2/2} u'.

    w' is closed in (u, u') because u'' is eliminated through (H):
    w' = -z^{gamma-1} e^{delta z + eps z^2/2} (alpha z - q) u.
    """
    if z == 0:
        raise DomainError("w_transform: z = 0 is the singular point")
    gauge = _gauge_factor(p, z)
    w = gauge * du
    dw = -(gauge / z) * (p.alpha_h * z - p.q_h) * u
    return w, dw


def w_transform_derivatives(p: BiconfluentParams, z: complex, u: complex,
                            du: complex, d2u: complex, d3u: complex):
    """(w, w', w'') by plain product rule, independent of the equation (H).

    Feeding series derivatives through this and testing them against the
    derived equation for w is the machine check that the transform really
    produces a solution of it.
    """
    if z == 0:
        raise DomainError("w_transform_derivatives: z = 0 is the singular point")
    gauge = _gauge_factor(p, z)
    ell = p.gamma_h / z + p.delta_h + p.eps_h * z
    ell_prime = -p.gamma_h / (z * z) + p.eps_h
    w = gauge * du
    dw = gauge * (ell * du + d2u)
    d2w = gauge * ((ell * ell + ell_prime) * du + 2.0 * ell * d2u + d3u)
    return w, dw, d2w


# ----------------------------------------------------------------------
# invariant matching
# ----------------------------------------------------------------------

def invariant_match(p: BiconfluentParams, z: float, barrier: GeneralizedBarrier,
                    E: float, physics: PhysicsConfig, v2: float | None = None):
    """Both sides of the invariant-matching identity and their scaled gap.

    The left side is the invariant g - f'/2 - f^2/4 of the derived equation
    for w; the right side combines the Schwarzian-like terms of the
    coordinate map with (2m/hbar^2)(E - V(z))/rho^2.  For parameters coming
    from :func:`map_params` and a barrier honouring the quadratic-coefficient
    constraint the gap vanishes; ``v2`` overrides the constrained coefficient
    to build non-conforming negative controls.
    """
    if not z > 0.0:
        raise DomainError(f"invariant_match requires z > 0, got {z}")
    z0 = complex(p.z0)
    if abs(z0 + 1.0) > 1e-9:
        raise DomainError(
            f"invariant_match assumes the z0 = -1 normalization, got z0={z0}"
        )
    g = p.gamma_h
    d = p.delta_h
    e = p.eps_h
    al = p.alpha_h
    f_coeff = -((g - 1.0) / z + d + e * z + 1.0 / (z - z0))
    f_prime = (g - 1.0) / z**2 - e + 1.0 / (z - z0) ** 2
    g_coeff = al * (z - z0) / z
    lhs = g_coeff - f_prime / 2.0 - f_coeff**2 / 4.0

    lr = 1.0 / z - 1.0 / (z - z0)          # rho'/rho in z
    lr_prime = -1.0 / z**2 + 1.0 / (z - z0) ** 2
    inv_rho2 = barrier.sigma**2 * (z - z0) ** 2 / z**2
    v2_val = barrier.v2(physics) if v2 is None else v2
    opz = 1.0 + z
    v_of_z = (barrier.v0 + barrier.v1 / opz + v2_val / opz**2 + barrier.v3 / opz**3)
    rhs = -lr_prime / 2.0 - lr**2 / 4.0 + physics.coupling * (E - v_of_z) * inv_rho2

    gap = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)
    return lhs, rhs, gap


# ----------------------------------------------------------------------
# parameter map and reduction
# ----------------------------------------------------------------------

def map_params(E: float, barrier: GeneralizedBarrier,
               physics: PhysicsConfig) -> GeneralizedSolutionParams:
    """Equation parameters for the generalized barrier at energy E.

    gamma = 2 sigma sqrt(c (-E + v0 + v1 + c sigma^2 v3^2)),  c = 2m/hbar^2,
    delta = gamma + 2 c sigma^2 v3,
    alpha = -q = c sigma^2 (v1 + delta v3),  eps = 0,

    with the principal square root, which makes gamma purely imaginary at
    scattering energies and equal to i times the Lambert-case delta.
    """
    c = physics.coupling
    sg = barrier.sigma
    radicand = c * (-E + barrier.v0 + barrier.v1 + c * sg**2 * barrier.v3**2)
    gamma_h = 2.0 * sg * cmath.sqrt(radicand)
    delta_h = gamma_h + 2.0 * c * sg**2 * barrier.v3
    alpha_h = c * sg**2 * (barrier.v1 + delta_h * barrier.v3)
    return GeneralizedSolutionParams(gamma_h=gamma_h, delta_h=delta_h, alpha_h=alpha_h)


def reduce_to_hypergeometric(p) -> HypergeometricReduction:
    """Collapse the eps = 0 equation onto a Kummer function.

    With lam a root of lam^2 + delta*lam + alpha = 0 and D = sqrt(delta^2 -
    4 alpha) (principal branch), u(z) = e^{lam z} M(A; gamma; D z) with
    lam = (-delta - D)/2 and A = (lam*gamma + alpha)/(-D) reproduces the
    exponent-zero Frobenius solution exactly; alpha = 0 degenerates to
    elementary exponentials, which the same formulas cover.
    """
    if isinstance(p, BiconfluentParams):
        if p.eps_h != 0:
            raise DomainError("reduce_to_hypergeometric requires eps_h = 0")
        if p.q_h != -p.alpha_h:
            raise DomainError("reduce_to_hypergeometric requires q_h = -alpha_h")
        gp = GeneralizedSolutionParams(p.gamma_h, p.delta_h, p.alpha_h)
    else:
        gp = p
    disc = gp.delta_h * gp.delta_h - 4.0 * gp.alpha_h
    d_scale = cmath.sqrt(disc)
    if d_scale == 0:
        raise IllConditionedError(
            "reduce_to_hypergeometric: degenerate double root (delta^2 = 4 alpha)"
        )
    lam = (-gp.delta_h - d_scale) / 2.0
    a = (lam * gp.gamma_h + gp.alpha_h) / (-d_scale)
    return HypergeometricReduction(
        a=a, b=gp.gamma_h, exponent_coeff=lam, argument_scale=d_scale
    )


def _reduced_u_chain(red: HypergeometricReduction, z: complex, order: int):
    """(u, u', [u'']) of the reduced form via contiguous relations."""
    a, b = red.a, red.b
    lam, dsc = red.exponent_coeff, red.argument_scale
    w = dsc * z
    epart = cmath.exp(lam * z)
    m0 = kummer_m(a, b, w)
    u = epart * m0
    if order == 0:
        return (u,)
    m1 = kummer_m(a + 1.0, b + 1.0, w)
    du = epart * (lam * m0 + dsc * (a / b) * m1)
    if order == 1:
        return u, du
    m2 = kummer_m(a + 2.0, b + 2.0, w)
    d2u = epart * (
        lam * lam * m0
        + 2.0 * lam * dsc * (a / b) * m1
        + dsc * dsc * (a * (a + 1.0) / (b * (b + 1.0))) * m2
    )
    return u, du, d2u


def heun_wavefunction(x: float, E: float, barrier: GeneralizedBarrier,
                      physics: PhysicsConfig):
    """(psi, dpsi/dx) for the generalized barrier, psi = z^{gamma/2} e^{delta z/2} u'.

    Built on the hypergeometric reduction (eps = 0 always holds here); the
    overall normalization is the series one, u(0) = 1.
    """
    gp = map_params(E, barrier, physics)
    red = reduce_to_hypergeometric(gp)
    z = z_of_x(x, barrier.sigma, barrier.x0)
    _, du, d2u = _reduced_u_chain(red, z, 2)
    pref = complex_pow(z, gp.gamma_h / 2.0) * cmath.exp(gp.delta_h * z / 2.0)
    psi = pref * du
    dpsi_dz = (gp.gamma_h / (2.0 * z) + gp.delta_h / 2.0) * psi + pref * d2u
    return psi, dpsi_dz * rho(z, barrier.sigma)
