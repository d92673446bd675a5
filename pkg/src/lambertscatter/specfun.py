"""From-scratch special functions for the scattering solution.

Everything here is dependency-free (stdlib ``math``/``cmath`` only) and scalar:

* real Lambert W on the principal branch (Halley iteration),
* complex log-Gamma (Lanczos approximation, reflection for Re z < 1/2),
* Kummer M = 1F1 for complex parameters and argument,
* Tricomi U via the two-M connection formula with an asymptotic fallback,
* principal-branch complex powers.

The Kummer evaluator is the workhorse: the scattering solution needs M on
(and near) the imaginary axis with |z| up to ~10^3.  A single Taylor series
is hopeless there -- its largest term is ~e^{|z|} while the sum stays O(1),
so double precision loses |z|/ln10 digits.  Instead the series is used only
for |z| <= 12 and the value is continued outward by re-expanding the ODE's
Taylor series about intermediate points (short hops keep every local series
mild), switching to the large-z asymptotic expansion once it is at machine
precision.

References
----------
Corless, Gonnet, Hare, Jeffrey, Knuth, "On the Lambert W function",
Adv. Comput. Math. 5, 329 (1996).
NIST DLMF chapter 13 (confluent hypergeometric functions), chapter 5 (Gamma).
"""

from __future__ import annotations

import cmath
import math

from .errors import ConvergenceError, DomainError, IllConditionedError, PoleError

__all__ = [
    "lambert_w",
    "log_gamma",
    "kummer_m",
    "tricomi_u",
    "complex_pow",
]

_INV_E = math.exp(-1.0)

# Kummer evaluation strategy thresholds.  The direct series keeps its largest
# term below ~e^12/|sum|, i.e. at most ~5-6 digits of cancellation; hops of 7
# stay well inside the re-expansion radius |z0| and keep local cancellation
# to ~3 digits; beyond |z| = 60 the divergent asymptotic series bottoms out
# below 1e-16.
_SERIES_RADIUS = 12.0
_STEP_HOP = 7.0
_ASYMPTOTIC_RADIUS = 60.0
_MAX_SERIES_TERMS = 600


# ----------------------------------------------------------------------
# Lambert W, principal branch, real argument
# ----------------------------------------------------------------------

def lambert_w(t: float) -> float:
    """Principal-branch Lambert W: the solution w >= -1 of w*exp(w) = t.

    Parameters
    ----------
    t : float
        Argument, t >= -1/e.

    Returns
    -------
    float
        w with ``w*exp(w) == t`` to ~1e-15 relative.

    Raises
    ------
    DomainError
        If t < -1/e (no real principal-branch value) or t is not finite.
    """
    t = float(t)
    if not math.isfinite(t):
        raise DomainError(f"lambert_w: non-finite argument {t!r}")
    if t < -_INV_E:
        if t > -_INV_E - 1e-15 * _INV_E:
            return -1.0
        raise DomainError(f"lambert_w: argument {t} below -1/e")
    if t == 0.0:
        return 0.0

    # Initial guesses per regime; Halley then converges cubically.
    if t < 0.0:
        # near the branch point: series in p = sqrt(2(e t + 1))
        p = math.sqrt(2.0 * (math.e * t + 1.0))
        w = -1.0 + p - p * p / 3.0 + 11.0 * p**3 / 72.0
    elif t <= 1.0:
        w = t * (1.0 - t)
    elif t <= math.e:
        w = 0.5 + 0.5 * math.log(t)
    else:
        lt = math.log(t)
        w = lt - math.log(lt)

    for _ in range(50):
        ew = math.exp(w)
        f = w * ew - t
        wp1 = w + 1.0
        if f == 0.0 or abs(wp1) < 1e-12:
            break  # converged, or pinned at the branch point where f' -> 0
        # Halley step for f = w e^w - t
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        dw = f / denom
        w -= dw
        if w < -1.0:
            w = -1.0
        if abs(dw) <= 1e-15 * max(abs(w), 1e-300):
            break
    return w


# ----------------------------------------------------------------------
# complex log-Gamma
# ----------------------------------------------------------------------

# Lanczos coefficients, g = 7, n = 9 (the widely used set giving ~15 digits
# on the right half-plane).
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)


def _near_nonpositive_integer(z: complex, tol: float) -> bool:
    n = round(z.real)
    return n <= 0 and abs(z - n) < tol


def log_gamma(z: complex) -> complex:
    """log of the Gamma function, principal branch on the right half-plane.

    For Re z >= 1/2 the Lanczos sum with principal logarithms is continuous
    and agrees with the principal branch of ln Gamma.  For Re z < 1/2 the
    reflection formula is applied; there ``exp(log_gamma(z))`` equals
    Gamma(z) exactly, with the imaginary part fixed only modulo 2*pi.

    Raises
    ------
    PoleError
        If z sits on a non-positive integer (within ~1e-13).
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"log_gamma: non-finite argument {z!r}")
    if _near_nonpositive_integer(z, 1e-13):
        raise PoleError(f"log_gamma: pole at {z}")
    if z.real < 0.5:
        return _LOG_PI - _log_sin_pi(z) - log_gamma(1.0 - z)
    zz = z - 1.0
    acc = complex(_LANCZOS_C[0])
    for i in range(1, 9):
        acc += _LANCZOS_C[i] / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (zz + 0.5) * cmath.log(t) - t + cmath.log(acc)


def _log_sin_pi(z: complex) -> complex:
    """log(sin(pi z)), overflow-safe for large |Im z|."""
    w = cmath.pi * z
    if abs(w.imag) < 20.0:
        return cmath.log(cmath.sin(w))
    # sin w = (e^{iw} - e^{-iw}) / 2i; factor out the dominant exponential
    if w.imag > 0:
        return -1j * w + cmath.log((1.0 - cmath.exp(2j * w)) / 2j)
    return 1j * w + cmath.log((cmath.exp(-2j * w) - 1.0) / 2j)


def _gamma(z: complex) -> complex:
    return cmath.exp(log_gamma(z))


def _inv_gamma(z: complex) -> complex:
    """1/Gamma(z); exactly 0 at the poles of Gamma."""
    if _near_nonpositive_integer(complex(z), 1e-13):
        return 0.0 + 0.0j
    return cmath.exp(-log_gamma(z))


# ----------------------------------------------------------------------
# Kummer M (confluent hypergeometric 1F1)
# ----------------------------------------------------------------------

def _m_series(a: complex, b: complex, z: complex) -> complex:
    """Direct Taylor series with Neumaier-compensated summation."""
    s = 1.0 + 0.0j
    comp = 0.0 + 0.0j
    term = 1.0 + 0.0j
    quiet = 0
    for n in range(_MAX_SERIES_TERMS):
        term = term * (a + n) * z / ((b + n) * (n + 1))
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        if abs(term) <= 1e-17 * abs(s):
            quiet += 1
            if quiet >= 2:
                return s + comp
        else:
            quiet = 0
    raise ConvergenceError(
        f"kummer_m series did not converge for a={a}, b={b}, z={z}"
    )


def _m_taylor_hop(a: complex, b: complex, z0: complex, u0: complex,
                  u1: complex, h: complex) -> tuple[complex, complex]:
    """Advance (M, M') from z0 to z0+h via the local ODE Taylor series.

    Coefficients about z0 obey
    c_{n+2} = -[(n+1)(n+b-z0) c_{n+1} - (n+a) c_n] / (z0 (n+2)(n+1)),
    which follows from w u'' + (b - w) u' - a u = 0 at w = z0 + h.
    """
    cprev, ccur = u0, u1
    val = u0 + u1 * h
    der = u1
    hp = h
    for n in range(400):
        cnext = -((n + 1) * (n + b - z0) * ccur - (n + a) * cprev) / (
            z0 * (n + 2) * (n + 1)
        )
        der += cnext * (n + 2) * hp
        hp *= h
        tv = cnext * hp
        val += tv
        if abs(tv) <= 1e-18 * abs(val):
            return val, der
        cprev, ccur = ccur, cnext
    raise ConvergenceError(
        f"kummer_m continuation stalled at z0={z0}, hop={h}"
    )


def _m_asymptotic(a: complex, b: complex, z: complex) -> complex:
    """Large-|z| expansion (DLMF 13.7.2), each sum truncated at its smallest term."""
    s1 = 1.0 + 0.0j  # sum in (a)_n (a-b+1)_n / n! (-z)^{-n}
    term = 1.0 + 0.0j
    best = 1.0
    for n in range(80):
        term = term * (a + n) * (a - b + 1.0 + n) / ((n + 1) * (-z))
        if abs(term) >= best:
            break
        s1 += term
        best = abs(term)
    s2 = 1.0 + 0.0j  # sum in (b-a)_n (1-a)_n / n! z^{-n}
    term = 1.0 + 0.0j
    best = 1.0
    for n in range(80):
        term = term * (b - a + n) * (1.0 - a + n) / ((n + 1) * z)
        if abs(term) >= best:
            break
        s2 += term
        best = abs(term)
    sign = 1.0 if z.imag >= 0.0 else -1.0
    e_pre = cmath.exp(sign * 1j * cmath.pi * a)
    t1 = e_pre * complex_pow(z, -a) * _inv_gamma(b - a) * s1
    t2 = cmath.exp(z) * complex_pow(z, a - b) * _inv_gamma(a) * s2
    return _gamma(b) * (t1 + t2)


def kummer_m(a: complex, b: complex, z: complex) -> complex:
    """Kummer confluent hypergeometric function M(a; b; z) = 1F1(a; b; z).

    Strategy: compensated Taylor series for |z| <= 12; for larger |z| the
    value is carried outward along the ray by re-expanding the Taylor series
    of the defining ODE about intermediate points (hop <= 7), after applying
    the Kummer transformation M(a;b;z) = e^z M(b-a;b;-z) when Re z < 0;
    beyond |z| = 60 the asymptotic expansion truncated at its smallest term
    takes over.

    Raises
    ------
    IllConditionedError
        If b is within 1e-8 of a non-positive integer (pole of M).
    """
    a = complex(a)
    b = complex(b)
    z = complex(z)
    for name, v in (("a", a), ("b", b), ("z", z)):
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise DomainError(f"kummer_m: non-finite {name}={v!r}")
    if _near_nonpositive_integer(b, 1e-8):
        raise IllConditionedError(f"kummer_m: b={b} too close to a non-positive integer")

    r = abs(z)
    if r <= _SERIES_RADIUS:
        return _m_series(a, b, z)
    if z.real < 0.0:
        # Kummer transformation; -z lands in the right half-plane
        return cmath.exp(z) * kummer_m(b - a, b, -z)
    if r >= _ASYMPTOTIC_RADIUS:
        return _m_asymptotic(a, b, z)

    zhat = z / r
    anchor = _SERIES_RADIUS / 1.2 * zhat  # |anchor| = 10
    u0 = _m_series(a, b, anchor)
    u1 = (a / b) * _m_series(a + 1.0, b + 1.0, anchor)
    rho = abs(anchor)
    while rho < r:
        hop = min(_STEP_HOP, r - rho)
        u0, u1 = _m_taylor_hop(a, b, rho * zhat, u0, u1, hop * zhat)
        rho += hop
    return u0


# ----------------------------------------------------------------------
# Tricomi U
# ----------------------------------------------------------------------

def _u_asymptotic(a: complex, b: complex, z: complex) -> tuple[complex, float]:
    """z^{-a} 2F0-type expansion (DLMF 13.7.3); returns (value, error estimate)."""
    s = 1.0 + 0.0j
    term = 1.0 + 0.0j
    best = 1.0
    for n in range(120):
        term = term * (a + n) * (a - b + 1.0 + n) / (-(n + 1) * z)
        if abs(term) >= best:
            break
        s += term
        best = abs(term)
    return complex_pow(z, -a) * s, best / max(abs(s), 1e-300)


def _u_connection(a: complex, b: complex, z: complex) -> tuple[complex, float]:
    """Two-M connection formula; returns (value, summed term magnitude)."""
    c1 = _gamma(1.0 - b) * _inv_gamma(a - b + 1.0)
    c2 = _gamma(b - 1.0) * _inv_gamma(a)
    t1 = c1 * kummer_m(a, b, z)
    t2 = c2 * complex_pow(z, 1.0 - b) * kummer_m(a - b + 1.0, 2.0 - b, z)
    return t1 + t2, abs(t1) + abs(t2)


def tricomi_u(a: complex, b: complex, z: complex) -> complex:
    """Tricomi confluent hypergeometric function U(a; b; z).

    Uses the connection formula

        U = Gamma(1-b)/Gamma(a-b+1) M(a;b;z)
            + Gamma(b-1)/Gamma(a) z^{1-b} M(a-b+1;2-b;z)

    with pole-safe reciprocal Gamma prefactors, monitoring the cancellation
    between the two terms; when more than 6 digits cancel the large-z
    asymptotic expansion is used instead if its own truncation error is
    smaller.  U is analytic in b, so an exactly-integer b (where both
    connection terms blow up individually) is handled as the symmetric
    limit (U(a; b+eps; z) + U(a; b-eps; z))/2, good to ~1e-9.

    Raises
    ------
    IllConditionedError
        If b is within 1e-8 of an integer without being one (no clean limit),
        or the cancellation monitor trips with no accurate fallback.
    DomainError
        If z == 0.
    """
    a = complex(a)
    b = complex(b)
    z = complex(z)
    if z == 0:
        raise DomainError("tricomi_u: z = 0 is a branch point")
    dist = abs(b - round(b.real))
    if dist < 1e-12:
        eps = 1e-6
        u_hi, _ = _u_connection(a, b + eps, z)
        u_lo, _ = _u_connection(a, b - eps, z)
        return 0.5 * (u_hi + u_lo)
    if dist < 1e-8:
        raise IllConditionedError(f"tricomi_u: b={b} too close to an integer")

    if abs(z) >= 80.0:
        return _u_asymptotic(a, b, z)[0]

    u, magnitude = _u_connection(a, b, z)
    if magnitude > 0.0 and abs(u) < 1e-6 * magnitude:
        # > 6 digits cancelled; the connection value carries ~magnitude*eps
        conn_err = magnitude * 1e-15
        asym, rel_est = _u_asymptotic(a, b, z)
        if rel_est * abs(asym) < conn_err:
            return asym
        raise IllConditionedError(
            f"tricomi_u: connection formula cancels {magnitude / max(abs(u), 1e-300):.1e}-fold "
            f"at a={a}, b={b}, z={z} and no accurate fallback applies"
        )
    return u


# ----------------------------------------------------------------------
# principal-branch powers
# ----------------------------------------------------------------------

def complex_pow(base: complex, exponent: complex) -> complex:
    """base**exponent on the principal branch, arg(base) in (-pi, pi].

    Raises
    ------
    DomainError
        If base == 0 and Re(exponent) <= 0.
    """
    base = complex(base)
    exponent = complex(exponent)
    if base == 0:
        if exponent.real > 0.0:
            return 0.0 + 0.0j
        raise DomainError("complex_pow: 0 base needs Re(exponent) > 0")
    if base.imag == 0.0:
        # strip a possible negative-zero imaginary part so the negative real
        # axis gets arg = +pi, matching the (-pi, pi] convention
        base = complex(base.real, 0.0)
    return cmath.exp(exponent * cmath.log(base))
