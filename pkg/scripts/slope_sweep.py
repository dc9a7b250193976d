#!/usr/bin/env python3
"""Sweep the closed-form families and tabulate measured slope intervals
against their predicted angles.

    python scripts/slope_sweep.py --iters 100000 --bits 256 --out sweep.json
"""

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from slopekit.dynamics import iterate_orbit
from slopekit.maps import alpha_left_map, alpha_right_map, log_map
from slopekit.precision import setup
from slopekit.serialize import dump_json, slope_report_to_doc
from slopekit.slope import slope_report


def families():
    for num, den in ((1, 4), (1, 2), (3, 4)):
        alpha = Fraction(num, den)
        target = math.pi * float(alpha) / (1 + float(alpha))
        yield f"alpha_{num}_{den}", alpha_right_map(alpha), target
        yield f"mirror_{num}_{den}", alpha_left_map(alpha), math.pi - target
    yield "log", log_map(), math.pi / 2


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--iters", type=int, default=100_000)
    ap.add_argument("--bits", type=int, default=256)
    ap.add_argument("--z0", default="0,1")
    ap.add_argument("--out", default=None, help="JSON summary path")
    args = ap.parse_args()
    setup(args.bits)
    re_s, im_s = args.z0.split(",")
    z0 = (Fraction(re_s), Fraction(im_s))

    docs = {}
    print(f"{'family':<12} {'lo':>10} {'hi':>10} {'target':>10} {'mid err':>10} conv")
    for name, f, target in families():
        rep = slope_report(iterate_orbit(f, z0, args.iters))
        print(f"{name:<12} {rep.interval_lo:>10.6f} {rep.interval_hi:>10.6f} "
              f"{target:>10.6f} {abs(rep.midpoint - target):>10.2e} {rep.converged}")
        doc = slope_report_to_doc(rep)
        doc["target"] = target
        docs[name] = doc
    if args.out:
        dump_json({"iters": args.iters, "bits": args.bits, "families": docs}, args.out)
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
