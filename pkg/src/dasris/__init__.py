"""Optimal 1-bit surface phase configuration via divide-and-sort, with baselines."""

from .baselines import (
    BaselineResult,
    DEFAULT_EXHAUSTIVE_LIMIT,
    ExhaustiveLimitError,
    continuous_upper_bound,
    exhaustive_search,
    greedy_bitflip,
    random_best_of_k,
)
from .das import (
    CandidateSet,
    DasSolution,
    FoldResult,
    SortPermutation,
    build_candidates,
    das_solve,
    fold_angles,
    recover_config,
    select_best,
    sort_folded,
)
from .harness import (
    AggregateRow,
    ExperimentPlan,
    PlanError,
    TrialRecord,
    aggregate,
    run_plan,
    timing_scaling,
    trial_seeds,
    write_aggregate_csv,
    write_trial_csv,
)
from .model import (
    ChannelFormatError,
    ChannelParams,
    ChannelRealization,
    CompositePhi,
    PhaseConfig,
    composite_phi,
    generate_channel,
    read_channel_csv,
    received_power,
    snr_db,
    write_channel_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateRow",
    "BaselineResult",
    "CandidateSet",
    "ChannelFormatError",
    "ChannelParams",
    "ChannelRealization",
    "CompositePhi",
    "DEFAULT_EXHAUSTIVE_LIMIT",
    "DasSolution",
    "ExhaustiveLimitError",
    "ExperimentPlan",
    "FoldResult",
    "PhaseConfig",
    "PlanError",
    "SortPermutation",
    "TrialRecord",
    "aggregate",
    "build_candidates",
    "composite_phi",
    "continuous_upper_bound",
    "das_solve",
    "exhaustive_search",
    "fold_angles",
    "generate_channel",
    "greedy_bitflip",
    "random_best_of_k",
    "read_channel_csv",
    "received_power",
    "recover_config",
    "run_plan",
    "select_best",
    "snr_db",
    "sort_folded",
    "timing_scaling",
    "trial_seeds",
    "write_aggregate_csv",
    "write_channel_csv",
    "write_trial_csv",
    "__version__",
]
