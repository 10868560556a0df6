#!/usr/bin/env python3
"""Measure solver wall time across surface sizes.

Runs the sort-based solver on freshly drawn channels at each requested size,
reports the total time for the requested number of repetitions, and fits a
log-log slope so the near-linear growth is visible at a glance.  Channel
generation is excluded from the timing.

Example:
    python scripts/run_scaling.py --sizes 250,500,1000,2000,4000 --runs 100
"""

import argparse

import numpy as np

from dasris.harness import ExperimentPlan, timing_scaling


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="250,500,1000,2000,4000",
                        help="comma-separated element counts")
    parser.add_argument("--runs", type=int, default=100,
                        help="solves per size (default 100)")
    parser.add_argument("--seed", type=int, default=0)
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    sizes = tuple(int(tok) for tok in args.sizes.split(","))
    plan = ExperimentPlan(n_values=sizes, trials=args.runs, base_seed=args.seed)
    timings = timing_scaling(plan)

    print(f"{'n':>8}  {'total_s':>12}  {'per_solve_us':>12}")
    for n, total in timings:
        print(f"{n:>8}  {total:>12.6f}  {total / args.runs * 1e6:>12.2f}")

    if len(timings) >= 2:
        logs_n = np.log([n for n, _ in timings])
        logs_t = np.log([t for _, t in timings])
        slope = np.polyfit(logs_n, logs_t, 1)[0]
        print(f"\nlog-log slope: {slope:.3f} (1.0 = linear, 2.0 = quadratic)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
