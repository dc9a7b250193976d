#!/usr/bin/env python3
"""Grid-check the single-step region inequalities on certified ladders and
report the worst normalized margin per region.

    python scripts/lemma_grids.py --grid 64 --bits 512
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from slopekit.constructions import (
    VARIANTS,
    build_construction,
    check_region_lemmas,
    search_constants,
)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--ks", default="1,2,3")
    ap.add_argument("--grid", type=int, default=32)
    ap.add_argument("--bits", type=int, default=512)
    args = ap.parse_args()
    ks = tuple(int(k) for k in args.ks.split(","))

    rc = 0
    for variant in VARIANTS:
        found = search_constants(variant, args.depth)
        if not found.feasible:
            print(f"{variant}: search infeasible, skipping")
            rc = 3
            continue
        spec = build_construction(variant, args.depth, found.a_growth, found.gamma_growth)
        rep = check_region_lemmas(spec, ks=ks, grid=args.grid, bits=args.bits)
        print(f"{variant} (a={found.a_growth}, g={found.gamma_growth}): "
              f"{len(rep.checks)} checks, ok={rep.ok}, tail_certified={rep.tail_certified}")
        for c in rep.checks:
            flag = "" if c.ok else "   <-- VIOLATED"
            print(f"    k={c.k} {c.region:<16} margin {c.worst_margin:+.4f} "
                  f"at {c.worst_point}{flag}")
        if not rep.ok:
            rc = 3
    return rc


if __name__ == "__main__":
    sys.exit(main())
