"""Command-line front end.

Subcommands: simulate, classify, slope, construct, validate, quadcheck,
lemmacheck. Exit codes: 0 success, 2 input or contract error, 3 numeric
failure (precision exhaustion, route disagreement, grid violation).

A JSON config file given with --config overrides any flags it names, so a
saved run configuration beats whatever is typed alongside it. Outputs are
deterministic byte-for-byte except the generated_at stamp, which
--no-timestamp removes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import gmpy2

from . import serialize
from .constructions import (
    build_construction,
    check_region_lemmas,
    search_constants,
    validate_conditions,
)
from .dynamics import classify_step, iterate_orbit
from .errors import InputError, NumericError, SlopekitError
from .maps import closed_reduced_integral
from .measures import alpha_left_measure, alpha_right_measure, log_right_measure, reduced_p
from .precision import (
    DEFAULT_BITS,
    current_bits,
    exact_fraction,
    format_real,
    setup,
    to_complex,
    use_bits,
)
from .slope import check_initial_point_independence, slope_report

EXIT_OK = 0

QUAD_TOL = 1e-6

_VARIANT_ALIASES = {
    "full": "full_interval",
    "half": "half_interval",
    "full_interval": "full_interval",
    "half_interval": "half_interval",
}


def _parse_point(text: str):
    """Parse `re,im` into exact fractions; the point must lie in H."""
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"expected complex value as re,im: {text!r}")
    try:
        re, im = (exact_fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"expected complex value as re,im: {text!r}") from None
    if im <= 0:
        raise InputError("z0 not in upper half-plane")
    return re, im


def _load_json(path: str, what: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"{what} file not found: {path}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{what} file is not valid JSON: {path}: {e}") from None


def _load_map(path: str):
    return serialize.map_from_doc(_load_json(path, "map"))


def _emit(doc: dict, args) -> None:
    text = serialize.dumps_json(doc) if args.no_timestamp else None
    if args.out:
        if text is None:
            serialize.dump_json(doc, args.out, timestamp=True)
        else:
            with open(args.out, "w") as fh:
                fh.write(text)
    else:
        if text is None:
            out = dict(doc)
            import datetime

            out["generated_at"] = datetime.datetime.now(
                datetime.timezone.utc
            ).isoformat(timespec="seconds")
            text = serialize.dumps_json(out)
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_simulate(args) -> int:
    f = _load_map(args.map)
    z0 = _parse_point(args.z0)
    trace = iterate_orbit(f, z0, args.iters, bits=args.bits)
    out = args.out or "trace.csv"
    serialize.write_trace_csv(trace, out, digits=args.digits)
    rho_tail = trace.rho_step[~_nan_mask(trace.rho_step)]
    tail_max = float(rho_tail[-10:].max()) if rho_tail.size else float("nan")
    print(
        f"final z = {format_real(trace.final_z.real, args.digits)}"
        f" + {format_real(trace.final_z.imag, args.digits)}i"
        f"  arg = {float(trace.args[-1]):.12g}"
        f"  rho-step tail max = {tail_max:.6g}"
        f"  trace -> {out}"
    )
    return EXIT_OK


def _nan_mask(a):
    import numpy as np

    return np.isnan(a)


def cmd_classify(args) -> int:
    f = _load_map(args.map)
    z0 = _parse_point(args.z0)
    cls = classify_step(f, z0, args.budget, bits=args.bits)
    _emit(serialize.classification_to_doc(cls), args)
    return EXIT_OK


def cmd_slope(args) -> int:
    f = _load_map(args.map)
    seeds = [_parse_point(s) for s in (args.seeds or [args.z0])]
    if len(seeds) > 1:
        cmp = check_initial_point_independence(f, seeds, args.iters, bits=args.bits)
        _emit(serialize.seed_comparison_to_doc(cmp), args)
        return EXIT_OK
    trace = iterate_orbit(f, seeds[0], args.iters, bits=args.bits)
    rep = slope_report(trace)
    _emit(serialize.slope_report_to_doc(rep), args)
    if args.windows_csv:
        serialize.write_window_csv(rep, args.windows_csv)
    return EXIT_OK


def cmd_construct(args) -> int:
    variant = _VARIANT_ALIASES.get(args.variant)
    if variant is None:
        raise InputError(f"unknown variant {args.variant!r}")
    if args.search:
        result = search_constants(variant, args.K)
        if not result.feasible:
            _emit(serialize.search_result_to_doc(result), args)
            print("search exhausted: no certifiable constants in range", file=sys.stderr)
            return 3
        spec = build_construction(
            variant, args.K, result.a_growth, result.gamma_growth
        )
    else:
        spec = build_construction(
            variant,
            args.K,
            exact_fraction(args.a_growth),
            exact_fraction(args.gamma_growth),
            a_base=exact_fraction(args.a_base),
            gamma_base=exact_fraction(args.gamma_base),
        )
    _emit(serialize.construction_to_doc(spec), args)
    return EXIT_OK


def cmd_validate(args) -> int:
    spec = serialize.construction_from_doc(_load_json(args.spec, "construction"))
    report = validate_conditions(spec)
    _emit(serialize.condition_report_to_doc(report), args)
    return EXIT_OK


_QUAD_THETAS = (Fraction(1, 6), Fraction(1, 2), Fraction(5, 6))  # multiples of pi
_QUAD_RADII = (1, 10, 100)


def _quad_case(task):
    """One comparison row; runs in a worker process, so reset precision."""
    bits, family, alpha_txt, r, theta_num, theta_den = task
    setup(bits)
    with use_bits(bits):
        alpha = Fraction(alpha_txt) if alpha_txt else None
        if family == "alpha_right":
            m = alpha_right_measure(alpha)
        elif family == "alpha_left":
            m = alpha_left_measure(alpha)
        else:
            m = log_right_measure()
        theta = gmpy2.const_pi() * theta_num / theta_den
        z = gmpy2.mpc(r * gmpy2.cos(theta), r * gmpy2.sin(theta))
        quad = reduced_p(m, z)
        closed = closed_reduced_integral(m.density, z)
        rel = float(abs(quad - closed) / abs(closed))
        return (
            family,
            alpha_txt,
            r,
            float(theta),
            complex(quad),
            complex(closed),
            rel,
        )


def cmd_quadcheck(args) -> int:
    cases = []
    for alpha in ("1/4", "1/2", "3/4"):
        cases.append(("alpha_right", alpha))
        cases.append(("alpha_left", alpha))
    cases.append(("log_right", ""))
    tasks = [
        (args.bits, family, alpha, r, th.numerator, th.denominator)
        for family, alpha in cases
        for r in _QUAD_RADII
        for th in _QUAD_THETAS
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_quad_case, tasks))
    else:
        rows = [_quad_case(t) for t in tasks]

    worst = 0.0
    lines = ["family,alpha,r,theta,quad_re,quad_im,closed_re,closed_im,rel_err"]
    for family, alpha, r, theta, quad, closed, rel in rows:
        worst = max(worst, rel)
        lines.append(
            f"{family},{alpha},{r},{theta:.12g},{quad.real:.17g},{quad.imag:.17g},"
            f"{closed.real:.17g},{closed.imag:.17g},{rel:.3e}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if worst > args.tol:
        print(f"route disagreement: worst rel err {worst:.3e} > {args.tol:g}", file=sys.stderr)
        return 3
    print(f"all routes agree: worst rel err {worst:.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_lemmacheck(args) -> int:
    if args.spec:
        spec = serialize.construction_from_doc(_load_json(args.spec, "construction"))
    else:
        variant = _VARIANT_ALIASES.get(args.variant or "")
        if variant is None:
            raise InputError("lemmacheck needs --spec FILE or --variant with --search")
        result = search_constants(variant, args.K)
        if not result.feasible:
            raise NumericError("search found no certifiable constants for lemmacheck")
        spec = build_construction(variant, args.K, result.a_growth, result.gamma_growth)
    ks = tuple(int(k) for k in args.ks.split(","))
    report = check_region_lemmas(spec, ks=ks, grid=args.grid, bits=args.bits)
    _emit(serialize.region_report_to_doc(report), args)
    if not report.ok:
        v = report.violations[0]
        print(
            f"region violation: {v.region}/{v.inequality} at k={v.k}, "
            f"worst point {v.worst_point}",
            file=sys.stderr,
        )
        return 3
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser wiring


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bits", type=int, default=None, help="working precision in bits")
    p.add_argument("--digits", type=int, default=30, help="output decimal digits")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--config", default=None, help="JSON config file; overrides flags")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument(
        "--no-timestamp",
        action="store_true",
        help="omit generated_at so outputs are byte-identical",
    )


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="slopekit",
        description="orbits, step classification, slope intervals, and pole-ladder "
        "certificates for parabolic self-maps of the upper half-plane",
    )
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="iterate an orbit and write a CSV trace")
    p.add_argument("--map", required=True, help="map JSON file")
    p.add_argument("--z0", required=True, help="starting point re,im")
    p.add_argument("--iters", type=int, default=1000)
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("classify", help="zero vs positive hyperbolic step")
    p.add_argument("--map", required=True)
    p.add_argument("--z0", required=True)
    p.add_argument("--budget", type=int, default=10_000)
    _add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("slope", help="bracket the limiting argument interval")
    p.add_argument("--map", required=True)
    p.add_argument("--z0", default="0,1")
    p.add_argument("--iters", type=int, default=100_000)
    p.add_argument(
        "--seeds",
        nargs="+",
        default=None,
        help="several starting points re,im; runs the seed-independence check",
    )
    p.add_argument("--windows-csv", default=None, help="also write window,min_arg,max_arg")
    _add_common(p)
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("construct", help="build a pole-ladder spec")
    p.add_argument("--variant", required=True, help="full|half (interval shape)")
    p.add_argument("--K", type=int, required=True, help="ladder depth")
    p.add_argument("--a-growth", default="1")
    p.add_argument("--gamma-growth", default="1")
    p.add_argument("--a-base", default="1")
    p.add_argument("--gamma-base", default="1")
    p.add_argument("--search", action="store_true", help="search certifiable constants")
    _add_common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("validate", help="run the condition checklist on a spec")
    p.add_argument("--spec", required=True, help="construction JSON file")
    _add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser(
        "quadcheck", help="quadrature vs closed form on a point grid"
    )
    p.add_argument("--tol", type=float, default=QUAD_TOL)
    _add_common(p)
    p.set_defaults(func=cmd_quadcheck)

    p = sub.add_parser("lemmacheck", help="grid checks of the region inequalities")
    p.add_argument("--spec", default=None, help="validated construction JSON")
    p.add_argument("--variant", default=None, help="full|half, with a fresh search")
    p.add_argument("--K", type=int, default=4)
    p.add_argument("--ks", default="1,2,3", help="comma-separated rung indices")
    p.add_argument("--grid", type=int, default=32)
    _add_common(p)
    # region grids default to high precision; an explicit --bits still wins
    p.set_defaults(func=cmd_lemmacheck, bits=512)

    return root


def _apply_config(args: argparse.Namespace) -> None:
    if not getattr(args, "config", None):
        return
    doc = _load_json(args.config, "config")
    if not isinstance(doc, dict):
        raise InputError("config file must hold a JSON object")
    for key, value in doc.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr) or attr in ("func", "command", "config"):
            raise InputError(f"config key {key!r} is not a setting of {args.command}")
        setattr(args, attr, value)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_config(args)
        if args.bits is None:
            args.bits = int(os.environ.get("SLOPEKIT_BITS", DEFAULT_BITS))
        if args.bits < 24:
            raise InputError("--bits must be at least 24")
        setup(args.bits)
        return args.func(args)
    except SlopekitError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
