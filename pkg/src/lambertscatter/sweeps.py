"""Parameter-sweep computations shared by the CLI and the verification suite."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .analytic import (
    reflection_step,
    reflection_tanh,
    reflection_wavenumbers,
    wave_numbers,
)
from .errors import RegimeError
from .oracle import default_config, extract_reflection, integrate_schrodinger
from .potentials import LambertBarrier, PhysicsConfig, evaluate

__all__ = ["reflection_point", "reflection_sweep", "potential_curve", "wavefunction_curve"]


def reflection_point(E: float, v0: float, sigma: float, physics: PhysicsConfig,
                     method: str = "closed", compare: tuple[str, ...] = (),
                     d: float | None = None) -> dict:
    """All requested reflection coefficients at one energy."""
    row: dict = {"E": E}
    k = wave_numbers(E, v0, physics)
    barrier = LambertBarrier(v0=v0, sigma=sigma)
    if method in ("closed", "both"):
        row["R_lambert"] = reflection_wavenumbers(k, sigma).r
    if method in ("oracle", "both"):
        cfg = default_config(E, barrier, physics)
        samples = integrate_schrodinger(
            lambda xs: evaluate(barrier, xs, physics), E, cfg.grid, physics
        )
        row["R_oracle"] = extract_reflection(samples, E, barrier, cfg, physics).r
    if method == "both":
        row["rel_gap"] = abs(row["R_lambert"] - row["R_oracle"]) / max(row["R_lambert"], 1e-300)
    if "step" in compare:
        row["R_step"] = reflection_step(k).r
    if "tanh" in compare:
        if d is None:
            raise RegimeError("tanh comparison requires a width d")
        row["R_tanh"] = reflection_tanh(k, d).r
    return row


def reflection_sweep(v0: float, sigma: float, energies, physics: PhysicsConfig,
                     method: str = "closed", compare: tuple[str, ...] = (),
                     d: float | None = None, jobs: int = 1) -> list[dict]:
    """Reflection coefficients over an energy grid; ordered by input index."""
    energies = [float(e) for e in energies]

    def work(E):
        return reflection_point(E, v0, sigma, physics, method, compare, d)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(work, energies))
    return [work(E) for E in energies]


def sigma_sweep(v0: float, E: float, sigmas, physics: PhysicsConfig,
                compare: tuple[str, ...] = (), d: float | None = None,
                jobs: int = 1) -> list[dict]:
    """Reflection versus barrier width at fixed energy (d tracks sigma if unset)."""
    k = wave_numbers(E, v0, physics)

    def work(sg):
        row = {"sigma": sg, "R_lambert": reflection_wavenumbers(k, sg).r}
        if "step" in compare:
            row["R_step"] = reflection_step(k).r
        if "tanh" in compare:
            row["R_tanh"] = reflection_tanh(k, d if d is not None else sg).r
        return row

    sigmas = [float(s) for s in sigmas]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(work, sigmas))
    return [work(s) for s in sigmas]


def potential_curve(barrier, xs, physics: PhysicsConfig, with_z: bool = False):
    """(x, V[, z]) columns for one barrier."""
    from .potentials import z_of_x

    xs = np.asarray(xs, dtype=float)
    v = evaluate(barrier, xs, physics)
    if with_z:
        return xs, np.asarray(v, dtype=float), z_of_x(xs, barrier.sigma, barrier.x0)
    return xs, np.asarray(v, dtype=float)


def wavefunction_curve(E, barrier, coeffs, xs, physics: PhysicsConfig):
    """(x, Re psi, Im psi, |psi|^2) columns."""
    from .analytic import wavefunction

    xs = np.asarray(xs, dtype=float)
    psi = np.empty(xs.size, dtype=complex)
    for i, x in enumerate(xs):
        psi[i] = wavefunction(float(x), E, barrier, coeffs, physics)[0]
    return xs, psi.real, psi.imag, np.abs(psi) ** 2
