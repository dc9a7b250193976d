#!/usr/bin/env python3
"""Find the smallest certifiable growth constants for the pole ladders and
print the per-condition checklist of the winners.

    python scripts/constant_search.py --depth 4
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from slopekit.constructions import VARIANTS, search_constants
from slopekit.serialize import dump_json, search_result_to_doc


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--variant", choices=VARIANTS, default=None,
                    help="default: both variants")
    ap.add_argument("--out", default=None, help="JSON result path (single variant)")
    args = ap.parse_args()

    variants = [args.variant] if args.variant else list(VARIANTS)
    rc = 0
    for variant in variants:
        r = search_constants(variant, args.depth)
        if not r.feasible:
            print(f"{variant}: no certifiable constants in range; "
                  f"binding condition {r.binding}")
            rc = 3
            continue
        print(f"{variant}: a growth {r.a_growth}, pole growth {r.gamma_growth}")
        for s in r.report.statuses:
            print(f"    {s.name:<14} ok={s.ok}  {s.detail}")
        if args.out and len(variants) == 1:
            dump_json(search_result_to_doc(r), args.out)
            print(f"wrote {args.out}")
    return rc


if __name__ == "__main__":
    sys.exit(main())
