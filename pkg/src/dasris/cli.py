"""Command line front end.

Commands:
    solve    read a channel CSV and print the optimal binary configuration
    bench    run a seeded sweep and write trial + aggregate CSVs
    compare  run a seeded sweep and print a per-size method table
    gen      draw a random channel and write it as a channel CSV

Exit codes: 0 success, 1 failed optimality verification, 2 input error,
3 I/O error, 4 plan rejection.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from .baselines import DEFAULT_EXHAUSTIVE_LIMIT, ExhaustiveLimitError, exhaustive_search
from .das import das_solve
from .harness import (
    ExperimentPlan,
    PlanError,
    aggregate,
    run_plan,
    write_aggregate_csv,
    write_trial_csv,
)
from .model import (
    ChannelFormatError,
    ChannelParams,
    generate_channel,
    read_channel_csv,
    snr_db,
    write_channel_csv,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_IO = 3
EXIT_PLAN = 4

DEFAULT_BENCH_DIR = "bench_out"


@dataclass(frozen=True)
class CliConfig:
    """Parsed command line options for one invocation."""

    command: str
    channel_path: Path | None = None
    n_values: tuple[int, ...] = ()
    trials: int = 100
    seed: int = 0
    methods: tuple[str, ...] = ("das",)
    los: bool = True
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT
    beta_g: float = 1.0
    beta_r: float = 1.0
    beta_d: float = 1.0
    noise_power: float = 1.0
    out: Path | None = None
    verify_exhaustive: bool = False


def _csv_ints(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _csv_names(text: str) -> tuple[str, ...]:
    return tuple(tok.strip() for tok in text.split(",") if tok.strip())


def _add_sweep_options(sub: argparse.ArgumentParser, with_methods: bool = True) -> None:
    sub.add_argument("--n", type=_csv_ints, required=True,
                     help="comma-separated surface sizes, e.g. 10,100")
    sub.add_argument("--trials", type=int, default=100, help="trials per size")
    sub.add_argument("--seed", type=int, default=0, help="base seed")
    if with_methods:
        sub.add_argument("--methods", type=_csv_names, default=("das",),
                         help="comma-separated subset of das,exhaustive,greedy,random")
    _add_channel_options(sub)


def _add_channel_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--no-los", action="store_true",
                     help="drop the direct link (h_d = 0)")
    sub.add_argument("--beta-g", type=float, default=1.0,
                     help="per-entry variance of g")
    sub.add_argument("--beta-r", type=float, default=1.0,
                     help="per-entry variance of h_r")
    sub.add_argument("--beta-d", type=float, default=1.0,
                     help="variance of the direct link")
    sub.add_argument("--noise-power", type=float, default=1.0,
                     help="receiver noise power")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dasris",
        description="Optimal 1-bit surface configuration and benchmarks",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    solve = subs.add_parser("solve", help="solve one channel file")
    solve.add_argument("channel", type=Path, help="channel CSV path")
    solve.add_argument("--verify-exhaustive", action="store_true",
                       help="cross-check against brute force")
    solve.add_argument("--exhaustive-limit", type=int, default=DEFAULT_EXHAUSTIVE_LIMIT,
                       help="largest n allowed for brute force")

    bench = subs.add_parser("bench", help="run a sweep and write CSVs")
    _add_sweep_options(bench)
    bench.add_argument("--exhaustive-limit", type=int, default=DEFAULT_EXHAUSTIVE_LIMIT)
    bench.add_argument("--out", type=Path, default=Path(DEFAULT_BENCH_DIR),
                       help="output directory for trials.csv and aggregate.csv")

    compare = subs.add_parser("compare", help="run a sweep and print a table")
    _add_sweep_options(compare)
    compare.add_argument("--exhaustive-limit", type=int, default=DEFAULT_EXHAUSTIVE_LIMIT)
    compare.add_argument("--out", type=Path, default=None,
                         help="optional path for the aggregate CSV")

    gen = subs.add_parser("gen", help="generate a random channel file")
    gen.add_argument("--n", type=_csv_ints, required=True, help="surface size")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", type=Path, required=True, help="channel CSV path")
    _add_channel_options(gen)

    return parser


def config_from_args(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        command=args.command,
        channel_path=getattr(args, "channel", None),
        n_values=tuple(getattr(args, "n", ()) or ()),
        trials=getattr(args, "trials", 100),
        seed=getattr(args, "seed", 0),
        methods=tuple(getattr(args, "methods", ("das",))),
        los=not getattr(args, "no_los", False),
        exhaustive_limit=getattr(args, "exhaustive_limit", DEFAULT_EXHAUSTIVE_LIMIT),
        beta_g=getattr(args, "beta_g", 1.0),
        beta_r=getattr(args, "beta_r", 1.0),
        beta_d=getattr(args, "beta_d", 1.0),
        noise_power=getattr(args, "noise_power", 1.0),
        out=getattr(args, "out", None),
        verify_exhaustive=getattr(args, "verify_exhaustive", False),
    )


def _channel_params(cfg: CliConfig) -> ChannelParams:
    return ChannelParams(
        beta_g=cfg.beta_g,
        beta_r=cfg.beta_r,
        beta_d=cfg.beta_d,
        los=cfg.los,
        noise_power=cfg.noise_power,
    )


def _plan(cfg: CliConfig) -> ExperimentPlan:
    return ExperimentPlan(
        n_values=cfg.n_values,
        trials=cfg.trials,
        base_seed=cfg.seed,
        methods=cfg.methods,
        channel_params=_channel_params(cfg),
        exhaustive_limit=cfg.exhaustive_limit,
    )


def format_signs(w) -> str:
    return "".join("+" if v > 0 else "-" for v in w)


def cmd_solve(cfg: CliConfig) -> int:
    with open(cfg.channel_path, "r", newline="") as fp:
        ch = read_channel_csv(fp)
    solution = das_solve(ch)
    theta = " ".join("0" if v > 0 else "pi" for v in solution.config.w)
    print(f"n: {ch.n}")
    print(f"w: {format_signs(solution.config.w)}")
    print(f"theta: {theta}")
    print(f"power: {solution.power!r}")
    print(f"snr_db: {snr_db(solution.power, ch.noise_power)!r}")
    if cfg.verify_exhaustive:
        reference = exhaustive_search(ch, cfg.exhaustive_limit)
        if math.isclose(solution.power, reference.power, rel_tol=1e-9, abs_tol=1e-12):
            print("verified: optimal")
        else:
            print(
                "verified: MISMATCH "
                f"das={solution.power!r} exhaustive={reference.power!r}"
            )
            return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_bench(cfg: CliConfig) -> int:
    records = run_plan(_plan(cfg))
    rows = aggregate(records)
    out_dir = cfg.out if cfg.out is not None else Path(DEFAULT_BENCH_DIR)
    out_dir.mkdir(parents=True, exist_ok=True)
    trials_path = out_dir / "trials.csv"
    aggregate_path = out_dir / "aggregate.csv"
    with open(trials_path, "w", newline="") as fp:
        write_trial_csv(records, fp)
    with open(aggregate_path, "w", newline="") as fp:
        write_aggregate_csv(rows, fp)
    write_aggregate_csv(rows, sys.stdout)
    print(f"wrote {trials_path} and {aggregate_path}", file=sys.stderr)
    return EXIT_OK


def cmd_compare(cfg: CliConfig) -> int:
    records = run_plan(_plan(cfg))
    rows = aggregate(records)
    header = f"{'n':>6}  {'method':<10}  {'mean_snr_db':>12}  {'mean_power':>12}  {'optimality':>10}  {'total_s':>9}"
    print(header)
    for row in rows:
        rate = "-" if math.isnan(row.optimality_rate) else f"{row.optimality_rate:.4f}"
        print(
            f"{row.n:>6}  {row.method:<10}  {row.mean_snr_db:>12.4f}  "
            f"{row.mean_power:>12.4f}  {rate:>10}  {row.total_time:>9.4f}"
        )
    if cfg.out is not None:
        with open(cfg.out, "w", newline="") as fp:
            write_aggregate_csv(rows, fp)
        print(f"wrote {cfg.out}", file=sys.stderr)
    return EXIT_OK


def cmd_gen(cfg: CliConfig) -> int:
    if len(cfg.n_values) != 1:
        raise ValueError("gen takes a single --n value")
    ch = generate_channel(cfg.n_values[0], cfg.seed, _channel_params(cfg))
    with open(cfg.out, "w", newline="") as fp:
        write_channel_csv(ch, fp)
    print(f"wrote {cfg.out}", file=sys.stderr)
    return EXIT_OK


_COMMANDS = {
    "solve": cmd_solve,
    "bench": cmd_bench,
    "compare": cmd_compare,
    "gen": cmd_gen,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = config_from_args(args)
    try:
        return _COMMANDS[cfg.command](cfg)
    except (PlanError, ExhaustiveLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PLAN
    except (ChannelFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
