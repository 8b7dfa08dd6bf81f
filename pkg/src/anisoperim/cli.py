"""Command-line front end.

Subcommands: constant, wulff, profile, verify, plot. Norm and domain
specifications are JSON, inline or by file path. Results are written as
JSON/CSV with 17-significant-digit numbers (byte-identical across runs
with the same config and seed) plus SVG figures rendered via matplotlib.

Exit codes: 0 success, 2 spec error, 3 numeric error, 4 verification
violation.
"""

import argparse
import os
import sys
from dataclasses import fields as dataclass_fields

import numpy as np

from . import __version__
from .errors import (AnisoError, GeometryError, InfeasibleError, InputError,
                     NumericError, PreconditionError, SpecError,
                     UnsupportedNormError)
from .solver import (Tolerances, area_profile, solve_auto, verify_lower_bound)
from .specs import (domain_from_spec, dump_csv, dump_json, load_spec_arg,
                    norm_from_spec)
from .wulff import WulffShape

EXIT_OK = 0
EXIT_SPEC = 2
EXIT_NUMERIC = 3
EXIT_VIOLATION = 4


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="anisoperim",
        description="Anisotropic relative isoperimetric constants, Wulff "
                    "shapes, and optimal cuts of planar convex domains.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, domain_required=True, need_domain=True):
        p.add_argument("--norm", required=True,
                       help="norm spec: JSON file path or inline JSON")
        if need_domain:
            p.add_argument("--domain", required=domain_required,
                           help="domain spec: JSON file path or inline JSON")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--seed", type=int, default=0, help="RNG seed")
        p.add_argument("--tol", action="append", default=[],
                       metavar="NAME=VALUE", help="tolerance override")

    p = sub.add_parser("constant", help="compute C_H and the optimal cut")
    common(p)
    p.add_argument("--samples", type=int, default=2000,
                   help="verification samples bundled with the result")

    p = sub.add_parser("wulff", help="emit the Wulff boundary as CSV + SVG")
    common(p, domain_required=False)

    p = sub.add_parser("profile", help="area-constrained profile mu(k)")
    common(p)
    p.add_argument("--k-grid", required=True, metavar="START:STOP:COUNT",
                   help="grid of prescribed areas")

    p = sub.add_parser("verify", help="randomized lower-bound verification")
    common(p)
    p.add_argument("--c", default="auto",
                   help="constant to verify, or 'auto' to solve first")
    p.add_argument("--samples", type=int, default=10000)

    p = sub.add_parser("plot", help="render domain + minimizing cut(s)")
    common(p)
    return parser


def _parse_tolerances(pairs):
    tol = Tolerances()
    valid = {f.name for f in dataclass_fields(Tolerances)}
    overrides = {}
    for pair in pairs:
        if "=" not in pair:
            raise SpecError(f"bad --tol {pair!r}; expected name=value")
        name, _, value = pair.partition("=")
        if name not in valid:
            raise SpecError(f"unknown tolerance {name!r}; valid: {sorted(valid)}")
        try:
            overrides[name] = float(value)
        except ValueError as exc:
            raise SpecError(f"bad tolerance value {value!r}") from exc
    return tol.replaced(**overrides) if overrides else tol, overrides


def _parse_k_grid(text, omega):
    parts = text.split(":")
    if len(parts) != 3:
        raise SpecError("--k-grid must be START:STOP:COUNT")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise SpecError(f"bad --k-grid {text!r}") from exc
    if count < 1 or start <= 0 or stop < start:
        raise SpecError("--k-grid needs 0 < START <= STOP and COUNT >= 1")
    if stop > 0.5 * omega.area * (1 + 1e-12):
        raise SpecError(
            f"--k-grid STOP {stop} exceeds half the domain area "
            f"{0.5 * omega.area}")
    return np.linspace(start, stop, count)


def _provenance(args, norm_spec, domain_spec, overrides):
    return {
        "version": __version__,
        "command": args.command,
        "norm_spec": norm_spec,
        "domain_spec": domain_spec,
        "seed": int(getattr(args, "seed", 0)),
        "tolerance_overrides": overrides,
    }


def _load(args, need_domain=True):
    norm_spec = load_spec_arg(args.norm)
    norm = norm_from_spec(norm_spec)
    domain_spec = None
    omega = None
    domain_arg = getattr(args, "domain", None)
    if domain_arg is not None:
        domain_spec = load_spec_arg(domain_arg)
        omega = domain_from_spec(domain_spec, norm)
    elif need_domain:
        raise SpecError("a --domain spec is required")
    return norm, omega, norm_spec, domain_spec


def cmd_constant(args):
    tol, overrides = _parse_tolerances(args.tol)
    norm, omega, norm_spec, domain_spec = _load(args)
    result = solve_auto(norm, omega, tolerances=tol,
                        verify_samples=args.samples, seed=args.seed)
    os.makedirs(args.out, exist_ok=True)
    payload = result.to_dict()
    payload["provenance"] = _provenance(args, norm_spec, domain_spec,
                                        overrides)
    payload["provenance"]["samples"] = int(args.samples)
    out_path = os.path.join(args.out, "constant.json")
    dump_json(payload, out_path)
    print(f"c_h = {result.c_h:.9g} ({result.method})")
    print(f"wrote {out_path}")
    return EXIT_OK


def cmd_wulff(args):
    tol, overrides = _parse_tolerances(args.tol)
    norm, omega, norm_spec, domain_spec = _load(args, need_domain=False)
    base = norm
    if not norm.smooth:
        if norm.family != "max_approx":
            raise SpecError("nonsmooth norm without p-approximants")
        base = norm.approximants()[-1]
        print(f"nonsmooth norm: rendering the p = "
              f"{base.params['p']:g} approximant")
    shape = WulffShape(base)
    os.makedirs(args.out, exist_ok=True)
    thetas, points = shape.boundary_samples()
    csv_path = os.path.join(args.out, "wulff_boundary.csv")
    dump_csv(csv_path, ["theta", "x", "y"],
             [(t, p[0], p[1]) for t, p in zip(thetas, points)])
    from .plotting import wulff_figure
    svg_path = os.path.join(args.out, "wulff.svg")
    wulff_figure(svg_path, shape, domain=omega, norm=base)
    print(f"|W| = {shape.area:.9g}, kappa_H = {shape.kappa:.9g}")
    print(f"wrote {csv_path} and {svg_path}")
    return EXIT_OK


def cmd_profile(args):
    tol, overrides = _parse_tolerances(args.tol)
    norm, omega, norm_spec, domain_spec = _load(args)
    ks = _parse_k_grid(args.k_grid, omega)
    base = norm
    if not norm.smooth:
        if norm.family != "max_approx":
            raise SpecError("nonsmooth norm without p-approximants")
        base = norm.approximants()[-1]
    rows = [(k, mu) for k, mu, _ in area_profile(base, omega, ks)]
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "profile.csv")
    dump_csv(csv_path, ["k", "mu"], rows)
    from .plotting import profile_figure
    svg_path = os.path.join(args.out, "profile.svg")
    profile_figure(svg_path, [r[0] for r in rows], [r[1] for r in rows])
    print(f"wrote {csv_path} and {svg_path}")
    return EXIT_OK


def cmd_verify(args):
    tol, overrides = _parse_tolerances(args.tol)
    norm, omega, norm_spec, domain_spec = _load(args)
    if args.c == "auto":
        result = solve_auto(norm, omega, tolerances=tol, seed=args.seed)
        c = result.c_h
    else:
        try:
            c = float(args.c)
        except ValueError as exc:
            raise SpecError(f"--c must be a number or 'auto', got {args.c!r}") \
                from exc
        if c <= 0:
            raise SpecError("--c must be positive")
    base = norm if norm.smooth else norm.approximants()[-1]
    summary = verify_lower_bound(base, omega, c, args.samples, args.seed,
                                 tolerances=tol)
    os.makedirs(args.out, exist_ok=True)
    payload = summary.to_dict()
    payload["c_source"] = "auto" if args.c == "auto" else "given"
    payload["provenance"] = _provenance(args, norm_spec, domain_spec,
                                        overrides)
    payload["provenance"]["samples"] = int(args.samples)
    out_path = os.path.join(args.out, "verify.json")
    dump_json(payload, out_path)
    print(f"violations = {summary.violations} / {summary.samples}, "
          f"worst Q/c = {summary.worst_ratio:.9g}")
    print(f"wrote {out_path}")
    return EXIT_VIOLATION if summary.violations > 0 else EXIT_OK


def cmd_plot(args):
    tol, overrides = _parse_tolerances(args.tol)
    norm, omega, norm_spec, domain_spec = _load(args)
    result = solve_auto(norm, omega, tolerances=tol, seed=args.seed)
    base = norm if norm.smooth else norm.approximants()[-1]
    shape = WulffShape(base)
    os.makedirs(args.out, exist_ok=True)
    from .plotting import result_figure
    svg_path = os.path.join(args.out, "plot.svg")
    result_figure(svg_path, omega, result.minimizers, shape=shape)
    print(f"c_h = {result.c_h:.9g}; wrote {svg_path}")
    return EXIT_OK


_COMMANDS = {
    "constant": cmd_constant,
    "wulff": cmd_wulff,
    "profile": cmd_profile,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors, matching our spec code
        return int(exc.code) if exc.code is not None else EXIT_SPEC
    try:
        return _COMMANDS[args.command](args)
    except (SpecError, InputError, PreconditionError,
            UnsupportedNormError) as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except (NumericError, GeometryError, InfeasibleError) as exc:
        diag = {"error": type(exc).__name__, "message": str(exc)}
        out = getattr(args, "out", ".")
        try:
            os.makedirs(out, exist_ok=True)
            dump_json(diag, os.path.join(out, "diagnostics.json"))
        except OSError:
            pass
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except AnisoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
