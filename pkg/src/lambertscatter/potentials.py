"""Barrier shapes, the Lambert coordinate transformation, and unit conventions.

All shapes rise from 0 on the far left to their plateau on the right, so a
particle incident from x = -infinity approaches from the low side.  Energies
and lengths are in whatever units make ``PhysicsConfig`` consistent; the
default m = 1/2, hbar = 1 gives 2m/hbar^2 = 1 so wave numbers are sqrt(E).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specfun import lambert_w

__all__ = [
    "PhysicsConfig",
    "LambertBarrier",
    "StepBarrier",
    "TanhBarrier",
    "GeneralizedBarrier",
    "SqrtRatioBarrier",
    "z_of_x",
    "rho",
    "evaluate",
    "evaluate_derivative",
]

# -(x-x0)/sigma beyond which exp() would need >10^13-scale intermediates;
# past it the transform is solved in logarithmic form instead.
_LOG_FORM_SWITCH = 30.0


@dataclass(frozen=True)
class PhysicsConfig:
    """Particle mass and reduced Planck constant; fixes 2m/hbar^2 everywhere."""

    m: float = 0.5
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.m > 0.0 and self.hbar > 0.0):
            raise DomainError(f"PhysicsConfig requires m > 0 and hbar > 0, got {self}")

    @property
    def coupling(self) -> float:
        """2m/hbar^2, the factor multiplying (E - V) in the wave equation."""
        return 2.0 * self.m / self.hbar**2


@dataclass(frozen=True)
class LambertBarrier:
    """Asymmetric step V(x) = v0 / (1 + W(exp(-(x-x0)/sigma)))."""

    v0: float
    sigma: float
    x0: float = 0.0

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise DomainError(f"LambertBarrier requires sigma > 0, got {self.sigma}")


@dataclass(frozen=True)
class StepBarrier:
    """Abrupt step: 0 for x < 0, v0 at and above x = 0."""

    v0: float


@dataclass(frozen=True)
class TanhBarrier:
    """Smooth step V(x) = v0 / (1 + exp(-x/d))."""

    v0: float
    d: float

    def __post_init__(self):
        if not self.d > 0.0:
            raise DomainError(f"TanhBarrier requires d > 0, got {self.d}")


@dataclass(frozen=True)
class GeneralizedBarrier:
    """Five-parameter conditionally integrable barrier in the Lambert variable.

    V = v0 + v1/(1+z) + v2/(1+z)^2 + v3/(1+z)^3 with z the Lambert transform
    of x.  The quadratic coefficient is never free: ``v2(physics)`` always
    returns -v3 + (2m/hbar^2) sigma^2 v3^2, the unique value for which the
    barrier admits closed-form solutions.  With v3 = 0 and v0 = 0 this
    reduces to ``LambertBarrier(v1, sigma, x0)``.
    """

    v0: float
    v1: float
    v3: float
    sigma: float
    x0: float = 0.0

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise DomainError(f"GeneralizedBarrier requires sigma > 0, got {self.sigma}")

    def v2(self, physics: PhysicsConfig) -> float:
        """Integrability-constrained (1+z)^-2 coefficient."""
        return -self.v3 + physics.coupling * self.sigma**2 * self.v3**2


@dataclass(frozen=True)
class SqrtRatioBarrier:
    """V(x) = v0 + v1 / (sqrt(x) (sqrt(x) + z0)) on x > 0 (evaluation only)."""

    v0: float
    v1: float
    z0: float

    def __post_init__(self):
        if not self.z0 > 0.0:
            raise DomainError(f"SqrtRatioBarrier requires z0 > 0, got {self.z0}")


# ----------------------------------------------------------------------
# coordinate transformation
# ----------------------------------------------------------------------

def _w_log_form(u: float) -> float:
    """Solve w + ln w = u for large u (i.e. W(e^u) without forming e^u).

    Seeded with the three-term asymptotic w ~ u - ln u + ln u / u and
    polished by Newton; for u > 30 two steps reach machine precision.
    """
    lu = math.log(u)
    w = u - lu + lu / u
    for _ in range(8):
        g = w + math.log(w) - u
        dw = g / (1.0 + 1.0 / w)
        w -= dw
        if abs(dw) <= 1e-16 * w:
            break
    return w


def _w_of_u_array(u: np.ndarray) -> np.ndarray:
    """Vectorized W(e^u) for real u (principal branch, always > 0)."""
    u = np.asarray(u, dtype=float)
    w = np.empty_like(u)

    small = u <= 1.0
    if np.any(small):
        t = np.exp(u[small])
        ws = t / (1.0 + t)
        for _ in range(5):  # Halley on w e^w - t; cubic from a ~10% seed
            ew = np.exp(ws)
            f = ws * ew - t
            wp1 = ws + 1.0
            ws -= f / (ew * wp1 - (ws + 2.0) * f / (2.0 * wp1))
        w[small] = ws

    big = ~small
    if np.any(big):
        ub = u[big]
        lu = np.log(ub)
        wb = ub - lu + lu / ub
        for _ in range(5):  # Newton on w + ln w - u
            wb -= (wb + np.log(wb) - ub) / (1.0 + 1.0 / wb)
        w[big] = wb
    return w


def z_of_x(x, sigma: float, x0: float = 0.0):
    """Lambert transform z = W(exp(-(x-x0)/sigma)), scalar or array.

    Strictly decreasing in x with z > 0 everywhere; far to the left the
    exponential overflows, so the defining relation is solved in the
    logarithmic form w + ln w = -(x-x0)/sigma instead (seeded by the
    three-term asymptotic z ~ L - ln L + ln L / L).
    """
    if not sigma > 0.0:
        raise DomainError(f"z_of_x requires sigma > 0, got {sigma}")
    if np.ndim(x) == 0:
        u = -(float(x) - x0) / sigma
        if u <= _LOG_FORM_SWITCH:
            return lambert_w(math.exp(u))
        return _w_log_form(u)
    return _w_of_u_array(-(np.asarray(x, dtype=float) - x0) / sigma)


def rho(z, sigma: float):
    """dz/dx of the Lambert transform, expressed in z: -(z/sigma)/(1+z)."""
    if not sigma > 0.0:
        raise DomainError(f"rho requires sigma > 0, got {sigma}")
    return -(z / sigma) / (1.0 + z)


# ----------------------------------------------------------------------
# evaluation
# ----------------------------------------------------------------------

def evaluate(barrier, x, physics: PhysicsConfig):
    """Potential value(s) V(x) for any barrier type; scalar or array x."""
    if isinstance(barrier, LambertBarrier):
        z = z_of_x(x, barrier.sigma, barrier.x0)
        return barrier.v0 / (1.0 + z)
    if isinstance(barrier, StepBarrier):
        if np.ndim(x) == 0:
            return 0.0 if x < 0.0 else barrier.v0
        return np.where(np.asarray(x, dtype=float) < 0.0, 0.0, barrier.v0)
    if isinstance(barrier, TanhBarrier):
        # v0/(1+e^{-x/d}) written via tanh to stay finite for very negative x
        xa = np.asarray(x, dtype=float) if np.ndim(x) else float(x)
        val = barrier.v0 * 0.5 * (1.0 + np.tanh(xa / (2.0 * barrier.d)))
        return float(val) if np.ndim(x) == 0 else val
    if isinstance(barrier, GeneralizedBarrier):
        z = z_of_x(x, barrier.sigma, barrier.x0)
        opz = 1.0 + z
        return (barrier.v0 + barrier.v1 / opz
                + barrier.v2(physics) / opz**2 + barrier.v3 / opz**3)
    if isinstance(barrier, SqrtRatioBarrier):
        xa = np.asarray(x, dtype=float)
        if np.any(xa <= 0.0):
            raise DomainError("SqrtRatioBarrier is defined for x > 0 only")
        sx = np.sqrt(xa)
        val = barrier.v0 + barrier.v1 / (sx * (sx + barrier.z0))
        return float(val) if np.ndim(x) == 0 else val
    raise TypeError(f"unknown barrier type {type(barrier).__name__}")


def evaluate_derivative(barrier, x, physics: PhysicsConfig):
    """dV/dx, analytic for every smooth barrier (0 a.e. for the step)."""
    if isinstance(barrier, LambertBarrier):
        z = z_of_x(x, barrier.sigma, barrier.x0)
        return -barrier.v0 * rho(z, barrier.sigma) / (1.0 + z) ** 2
    if isinstance(barrier, StepBarrier):
        return 0.0 if np.ndim(x) == 0 else np.zeros_like(np.asarray(x, dtype=float))
    if isinstance(barrier, TanhBarrier):
        xa = np.asarray(x, dtype=float) if np.ndim(x) else float(x)
        sech2 = 1.0 / np.cosh(xa / (2.0 * barrier.d)) ** 2
        val = barrier.v0 * sech2 / (4.0 * barrier.d)
        return float(val) if np.ndim(x) == 0 else val
    if isinstance(barrier, GeneralizedBarrier):
        z = z_of_x(x, barrier.sigma, barrier.x0)
        opz = 1.0 + z
        dv_dz = -(barrier.v1 / opz**2 + 2.0 * barrier.v2(physics) / opz**3
                  + 3.0 * barrier.v3 / opz**4)
        return dv_dz * rho(z, barrier.sigma)
    if isinstance(barrier, SqrtRatioBarrier):
        xa = np.asarray(x, dtype=float)
        if np.any(xa <= 0.0):
            raise DomainError("SqrtRatioBarrier is defined for x > 0 only")
        sx = np.sqrt(xa)
        val = -barrier.v1 * (2.0 * sx + barrier.z0) / (2.0 * xa**1.5 * (sx + barrier.z0) ** 2)
        return float(val) if np.ndim(x) == 0 else val
    raise TypeError(f"unknown barrier type {type(barrier).__name__}")
