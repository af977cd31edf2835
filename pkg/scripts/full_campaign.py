#!/usr/bin/env python3
"""Drive the long main-search campaigns, one potential (and optional type
subset) per invocation, with checkpoints and certificates.

Examples:
    python3 scripts/full_campaign.py g10sharpsharp
    python3 scripts/full_campaign.py g4 --types 0,1,2,3
    python3 scripts/full_campaign.py g5flat --types 0,1 --out runs/
Reference totals (blocks passed, one 2017-era run): g4 10848537,
g6 25159337, g5flat 34836235 over all types, g10sharp 100980519 over all
types, g10sharpsharp 805242.
"""

import argparse
import os
import sys
import time

from fivepoint.mainsearch import SearchConfig, load_checkpoint, run_main


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("potential")
    ap.add_argument("--types", default="0,1,2,3,4,5,6,7")
    ap.add_argument("--out", default=".runs")
    ap.add_argument("--budget", type=int, default=None)
    ap.add_argument("--no-certificate", action="store_true")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    tag = f"{args.potential}-t{args.types.replace(',', '')}"
    cp = os.path.join(args.out, f"{tag}.checkpoint")
    cert = None if args.no_certificate else os.path.join(args.out, f"{tag}.jsonl")
    if os.path.exists(cp):
        print(f"resuming from {cp}")
        cfg, stats, pending = load_checkpoint(cp)
        stats, pending = run_main(cfg, pending=pending, stats=stats)
    else:
        cfg = SearchConfig(potential=args.potential,
                           types=tuple(int(t) for t in args.types.split(",")),
                           budget=args.budget, certificate_path=cert,
                           checkpoint_path=cp)
        stats, pending = run_main(cfg)
    print(f"halted={stats.halted} processed={stats.processed} "
          f"passed={stats.passed} wall={stats.wall_seconds:.0f}s")
    for why, n in sorted(stats.passed_by.items()):
        print(f"  {why}: {n}")
    return 0 if stats.halted else 3


if __name__ == "__main__":
    sys.exit(main())
