#!/usr/bin/env python3
"""Run the default verification sweep and summarize it on stdout.

Writes the full per-cell table as CSV when --out is given.  Exit status is
nonzero iff any cell tripped a hard identity check, so this can gate CI.
"""
import argparse
import sys

from energia.sweep import SweepConfig, run_sweep, write_csv


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=2)
    ap.add_argument("--seed", help="master seed string; default 'energia'")
    ap.add_argument("--out", help="write the per-cell CSV here")
    args = ap.parse_args()

    cfg = SweepConfig() if args.seed is None else SweepConfig(master=args.seed)
    report = run_sweep(cfg, workers=args.workers)

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_csv(report, fh)

    print(f"cells: {len(report.cells)}   hard failures: {report.hard_failures}")
    print(f"max T / (sqrt(H) * fourth-moment bound): {report.max_c_fourth:.4f}")
    print()
    print(f"{'d':>2} {'m':>8} {'slope all H':>12} {'slope small H':>14}")
    for s in report.slopes:
        all_s = "-" if s.slope_all is None else f"{s.slope_all:.3f}"
        small_s = "-" if s.slope_small is None else f"{s.slope_small:.3f}"
        print(f"{s.d:>2} {s.m:>8} {all_s:>12} {small_s:>14}")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
