#!/usr/bin/env python3
"""Check the sort-based solver against brute force over random channels.

Draws seeded random channels at every size in the requested range, half with
and half without a direct link, and verifies that the solver's received power
matches the exhaustive optimum to within a relative tolerance.  Prints a
per-size match count and the worst relative gap seen.

Example:
    python scripts/run_oracle_sweep.py --max-size 14 --trials 1000
"""

import argparse
import math

import numpy as np

from dasris.baselines import exhaustive_search
from dasris.das import das_solve
from dasris.model import ChannelParams, generate_channel


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-size", type=int, default=14)
    parser.add_argument("--trials", type=int, default=1000,
                        help="instances per size, split between LoS arms")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--rtol", type=float, default=1e-9)
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    worst = 0.0
    total_bad = 0
    print(f"{'n':>4}  {'matches':>9}  {'max_rel_gap':>12}")
    for n in range(1, args.max_size + 1):
        bad = 0
        size_worst = 0.0
        for trial in range(args.trials):
            los = trial % 2 == 0
            seed = int(np.random.SeedSequence(
                (args.seed, n, int(los), trial)).generate_state(1)[0])
            ch = generate_channel(n, seed, ChannelParams(los=los))
            solver = das_solve(ch).power
            oracle = exhaustive_search(ch).power
            gap = abs(solver - oracle) / max(oracle, 1e-300)
            size_worst = max(size_worst, gap)
            if not math.isclose(solver, oracle, rel_tol=args.rtol):
                bad += 1
        total_bad += bad
        worst = max(worst, size_worst)
        print(f"{n:>4}  {args.trials - bad:>5}/{args.trials}  {size_worst:>12.3e}")

    print(f"\n{total_bad} mismatches out of {args.max_size * args.trials} "
          f"instances at rtol {args.rtol}; worst relative gap {worst:.3e}")
    return 0 if total_bad == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
