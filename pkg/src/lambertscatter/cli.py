"""Command-line front end: sweeps, figure-data regeneration, verification.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 regime/domain
error.  Every number is serialized with 17 significant digits so CSV output
is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import verify
from .analytic import BasisCoefficients
from .errors import DomainError, IllConditionedError, MatchingError, RegimeError
from .potentials import (
    GeneralizedBarrier,
    LambertBarrier,
    PhysicsConfig,
    SqrtRatioBarrier,
    StepBarrier,
    TanhBarrier,
)
from .sweeps import potential_curve, reflection_sweep, sigma_sweep, wavefunction_curve

__all__ = ["main"]

_KINDS = ("lambert", "step", "tanh", "generalized", "sqrt_ratio")


def _fmt(value) -> str:
    return f"{float(value):.17g}"


def _write_csv(path: str, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _physics(args) -> PhysicsConfig:
    return PhysicsConfig(m=args.mass, hbar=args.hbar)


def _make_barrier(args, physics):
    kind = args.kind
    if kind == "lambert":
        return LambertBarrier(v0=args.v0, sigma=args.sigma, x0=args.x0)
    if kind == "step":
        return StepBarrier(v0=args.v0)
    if kind == "tanh":
        if args.d is None:
            raise DomainError("--kind tanh requires --d")
        return TanhBarrier(v0=args.v0, d=args.d)
    if kind == "generalized":
        return GeneralizedBarrier(v0=args.v0, v1=args.v1, v3=args.v3,
                                  sigma=args.sigma, x0=args.x0)
    if kind == "sqrt_ratio":
        return SqrtRatioBarrier(v0=args.v0, v1=args.v1, z0=args.z0)
    raise DomainError(f"unknown barrier kind {kind!r}")


def _cmd_potential(args) -> int:
    physics = _physics(args)
    barrier = _make_barrier(args, physics)
    xs = np.linspace(args.xmin, args.xmax, args.n)
    if args.kind in ("lambert", "generalized"):
        x, v, z = potential_curve(barrier, xs, physics, with_z=True)
        _write_csv(args.out, ["x", "V", "z"], zip(x, v, z))
    else:
        x, v = potential_curve(barrier, xs, physics)
        _write_csv(args.out, ["x", "V"], zip(x, v))
    return 0


def _cmd_reflect(args) -> int:
    physics = _physics(args)
    compare = tuple(s for s in (args.compare or "").split(",") if s)
    for c in compare:
        if c not in ("step", "tanh"):
            raise DomainError(f"unknown comparison barrier {c!r}")
    if args.sweep == "energy":
        if not args.emin > args.v0:
            raise RegimeError(
                f"energy sweep needs emin > v0 (closed forms are above-barrier only); "
                f"got emin={args.emin}, v0={args.v0}"
            )
        energies = np.linspace(args.emin, args.emax, args.n)
        rows = reflection_sweep(args.v0, args.sigma, energies, physics,
                                method=args.method, compare=compare, d=args.d,
                                jobs=args.jobs)
        header = ["E", "R_lambert"]
        if args.method == "oracle":
            header = ["E", "R_oracle"]
        elif args.method == "both":
            header = ["E", "R_lambert", "R_oracle"]
        if "step" in compare:
            header.append("R_step")
        if "tanh" in compare:
            header.append("R_tanh")
        if args.method == "both":
            header.append("rel_gap")
        _write_csv(args.out, header, ([row[h] for h in header] for row in rows))
        return 0
    # sigma sweep at fixed energy (regenerates reflection-vs-width data;
    # the tanh width follows sigma unless --d is given)
    if not args.e > args.v0:
        raise RegimeError(f"sigma sweep needs --e > v0, got e={args.e}, v0={args.v0}")
    sigmas = np.linspace(args.sigma_min, args.sigma_max, args.n)
    rows = sigma_sweep(args.v0, args.e, sigmas, physics, compare=compare,
                       d=args.d, jobs=args.jobs)
    header = ["sigma", "R_lambert"]
    if "step" in compare:
        header.append("R_step")
    if "tanh" in compare:
        header.append("R_tanh")
    _write_csv(args.out, header, ([row[h] for h in header] for row in rows))
    return 0


def _cmd_wavefunction(args) -> int:
    physics = _physics(args)
    if not args.e > args.v0:
        raise RegimeError(f"wavefunction needs e > v0, got e={args.e}, v0={args.v0}")
    barrier = LambertBarrier(v0=args.v0, sigma=args.sigma, x0=args.x0)
    coeffs = BasisCoefficients(complex(args.c1_re, args.c1_im),
                               complex(args.c2_re, args.c2_im))
    xs = np.linspace(args.xmin, args.xmax, args.n)
    x, re, im, dens = wavefunction_curve(args.e, barrier, coeffs, xs, physics)
    _write_csv(args.out, ["x", "re_psi", "im_psi", "density"],
               zip(x, re, im, dens))
    return 0


def _cmd_verify(args) -> int:
    t0 = time.perf_counter()
    checks = verify.run_checks(args.level)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    report = verify.build_report(
        command="verify",
        params={"level": args.level},
        checks=checks,
        wall_ms=wall_ms,
    )
    text = json.dumps(report, indent=2)
    if args.out == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    for c in checks:
        mark = "PASS" if c.status else "FAIL"
        print(f"[{mark}] {c.name}: measured {c.measured:.6g} "
              f"(tolerance {c.comparator} {c.tolerance:g})", file=sys.stderr)
    return 0 if report["passed"] else 1


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="lambert-scatter",
        description="Above-barrier scattering on the Lambert-W step potential.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_units(p):
        p.add_argument("--mass", type=float, default=0.5,
                       help="particle mass (default 0.5, so 2m/hbar^2 = 1)")
        p.add_argument("--hbar", type=float, default=1.0,
                       help="reduced Planck constant (default 1.0)")

    p = sub.add_parser("potential", help="sample a barrier shape to CSV")
    p.add_argument("--kind", choices=_KINDS, required=True)
    p.add_argument("--v0", type=float, default=1.0)
    p.add_argument("--v1", type=float, default=0.0, help="generalized/sqrt_ratio only")
    p.add_argument("--v3", type=float, default=0.0, help="generalized only")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--d", type=float, default=None, help="tanh width")
    p.add_argument("--z0", type=float, default=1.0, help="sqrt_ratio offset")
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--xmin", type=float, required=True)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--out", default="-")
    add_units(p)
    p.set_defaults(func=_cmd_potential)

    p = sub.add_parser("reflect", help="reflection-coefficient sweeps to CSV")
    p.add_argument("--sweep", choices=("energy", "sigma"), default="energy")
    p.add_argument("--v0", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=1.0, help="barrier width (energy sweep)")
    p.add_argument("--emin", type=float, default=1.01)
    p.add_argument("--emax", type=float, default=4.0)
    p.add_argument("--e", type=float, default=1.5, help="energy (sigma sweep)")
    p.add_argument("--sigma-min", type=float, default=0.1)
    p.add_argument("--sigma-max", type=float, default=12.0)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--method", choices=("closed", "oracle", "both"), default="closed")
    p.add_argument("--compare", default="", help="comma list from {step,tanh}")
    p.add_argument("--d", type=float, default=None,
                   help="tanh width (defaults to sigma in sigma sweeps)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="-")
    add_units(p)
    p.set_defaults(func=_cmd_reflect)

    p = sub.add_parser("wavefunction", help="sample the exact wavefunction to CSV")
    p.add_argument("--e", type=float, required=True)
    p.add_argument("--v0", type=float, default=1.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--c1-re", type=float, default=1.0)
    p.add_argument("--c1-im", type=float, default=0.0)
    p.add_argument("--c2-re", type=float, default=0.0)
    p.add_argument("--c2-im", type=float, default=0.0)
    p.add_argument("--xmin", type=float, required=True)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--out", default="-")
    add_units(p)
    p.set_defaults(func=_cmd_wavefunction)

    p = sub.add_parser("verify", help="run the acceptance-check suite")
    p.add_argument("--level", choices=(verify.QUICK, verify.FULL), default=verify.QUICK)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_verify)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, RegimeError, IllConditionedError, MatchingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
