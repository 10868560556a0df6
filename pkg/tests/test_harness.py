import csv
import io
import math

import numpy as np
import pytest

from dasris.harness import (
    AGGREGATE_CSV_HEADER,
    TRIAL_CSV_HEADER,
    AggregateRow,
    ExperimentPlan,
    PlanError,
    TrialRecord,
    aggregate,
    run_plan,
    timing_scaling,
    trial_seeds,
    validate_plan,
    write_aggregate_csv,
    write_trial_csv,
)
from dasris.model import ChannelParams, generate_channel


def small_plan(**overrides):
    base = dict(n_values=(4, 6), trials=3, base_seed=11,
                methods=("das", "exhaustive", "greedy", "random"))
    base.update(overrides)
    return ExperimentPlan(**base)


def test_validate_plan_rejects_bad_inputs():
    with pytest.raises(PlanError):
        validate_plan(small_plan(n_values=()))
    with pytest.raises(PlanError):
        validate_plan(small_plan(n_values=(0,)))
    with pytest.raises(PlanError):
        validate_plan(small_plan(trials=0))
    with pytest.raises(PlanError):
        validate_plan(small_plan(methods=()))
    with pytest.raises(PlanError):
        validate_plan(small_plan(methods=("das", "das")))
    with pytest.raises(PlanError):
        validate_plan(small_plan(methods=("sdp",)))
    with pytest.raises(PlanError):
        validate_plan(small_plan(base_seed=-1))


def test_validate_plan_enforces_exhaustive_limit():
    with pytest.raises(PlanError) as err:
        validate_plan(small_plan(n_values=(4, 25), exhaustive_limit=20))
    assert "20" in str(err.value)
    validate_plan(small_plan(n_values=(4, 25), methods=("das",), exhaustive_limit=20))


def test_run_plan_rejects_before_work(monkeypatch):
    import dasris.harness as harness

    def boom(*args, **kwargs):
        raise AssertionError("channel generated despite invalid plan")

    monkeypatch.setattr(harness, "generate_channel", boom)
    with pytest.raises(PlanError):
        run_plan(small_plan(trials=0))


def test_trial_seeds_distinct_and_stable():
    seen = set()
    for n in (1, 2, 50):
        for t in range(20):
            pair = trial_seeds(7, n, t)
            assert pair == trial_seeds(7, n, t)
            seen.add(pair)
    assert len(seen) == 60


def test_run_plan_record_grid():
    plan = small_plan()
    records = run_plan(plan)
    assert len(records) == 2 * 3 * 4
    # fixed method order within each trial
    methods = [r.method for r in records[:4]]
    assert methods == ["das", "exhaustive", "greedy", "random"]
    keys = [(r.n, r.trial) for r in records]
    assert keys == sorted(keys, key=lambda k: (plan.n_values.index(k[0]), k[1]))


def test_run_plan_methods_share_channels():
    records = run_plan(small_plan())
    by_cell = {}
    for rec in records:
        by_cell.setdefault((rec.n, rec.trial), {})[rec.method] = rec
    for cell in by_cell.values():
        das = cell["das"]
        exh = cell["exhaustive"]
        assert math.isclose(das.power, exh.power, rel_tol=1e-9, abs_tol=1e-12)
        assert cell["random"].power <= cell["greedy"].power <= das.power


def test_run_plan_powers_deterministic():
    a = run_plan(small_plan())
    b = run_plan(small_plan())
    assert [r.power for r in a] == [r.power for r in b]
    assert [r.snr_db for r in a] == [r.snr_db for r in b]


def test_run_plan_snr_uses_plan_noise_power():
    plan = small_plan(methods=("das",),
                      channel_params=ChannelParams(noise_power=0.5))
    for rec in run_plan(plan):
        assert math.isclose(rec.snr_db, 10 * math.log10(rec.power / 0.5), rel_tol=1e-12)


def test_aggregate_means_db_not_power():
    records = [
        TrialRecord(n=4, trial=0, method="das", power=1.0, snr_db=0.0, wall_time=0.25),
        TrialRecord(n=4, trial=1, method="das", power=100.0, snr_db=20.0, wall_time=0.75),
    ]
    rows = aggregate(records)
    assert len(rows) == 1
    row = rows[0]
    assert row.mean_snr_db == 10.0
    assert row.mean_power == 50.5
    assert row.total_time == 1.0
    assert math.isnan(row.optimality_rate)


def test_aggregate_optimality_rate():
    records = run_plan(small_plan())
    rows = {(r.n, r.method): r for r in aggregate(records)}
    for n in (4, 6):
        assert rows[(n, "exhaustive")].optimality_rate == 1.0
        assert rows[(n, "das")].optimality_rate == 1.0
        assert 0.0 <= rows[(n, "greedy")].optimality_rate <= 1.0
    no_oracle = aggregate(run_plan(small_plan(methods=("das",))))
    assert math.isnan(no_oracle[0].optimality_rate)


def test_mean_power_grows_quadratically():
    plan = ExperimentPlan(n_values=(50, 100), trials=1000, base_seed=3,
                          methods=("das",))
    rows = {row.n: row for row in aggregate(run_plan(plan))}
    ratio = rows[100].mean_power / rows[50].mean_power
    assert 3.0 <= ratio <= 5.4


def test_timing_scaling_das_only():
    with pytest.raises(PlanError):
        timing_scaling(small_plan())
    entries = timing_scaling(ExperimentPlan(n_values=(10, 50), trials=5,
                                            base_seed=0, methods=("das",)))
    assert [n for n, _ in entries] == [10, 50]
    assert all(t >= 0.0 for _, t in entries)


def test_trial_csv_layout_and_roundtrip():
    records = run_plan(small_plan(methods=("das",), trials=2, n_values=(3,)))
    buf = io.StringIO()
    write_trial_csv(records, buf)
    buf.seek(0)
    rows = list(csv.reader(buf))
    assert tuple(rows[0]) == TRIAL_CSV_HEADER
    assert len(rows) == 1 + len(records)
    for row, rec in zip(rows[1:], records):
        assert int(row[0]) == rec.n
        assert int(row[1]) == rec.trial
        assert row[2] == rec.method
        assert float(row[3]) == rec.power
        assert float(row[4]) == rec.snr_db
        assert float(row[5]) == rec.wall_time


def test_aggregate_csv_layout_and_roundtrip():
    rows_in = [
        AggregateRow(n=4, method="das", mean_snr_db=1.5, mean_power=2.25,
                     total_time=0.5, optimality_rate=float("nan")),
        AggregateRow(n=8, method="greedy", mean_snr_db=-3.0, mean_power=0.5,
                     total_time=1.5, optimality_rate=0.875),
    ]
    buf = io.StringIO()
    write_aggregate_csv(rows_in, buf)
    buf.seek(0)
    rows = list(csv.reader(buf))
    assert tuple(rows[0]) == AGGREGATE_CSV_HEADER
    assert rows[1][0] == "4"
    assert float(rows[1][2]) == 1.5
    assert math.isnan(float(rows[1][5]))
    assert float(rows[2][5]) == 0.875


def test_infinite_snr_written_parseable():
    records = [TrialRecord(n=1, trial=0, method="das", power=0.0,
                           snr_db=float("-inf"), wall_time=0.0)]
    buf = io.StringIO()
    write_trial_csv(records, buf)
    buf.seek(0)
    rows = list(csv.reader(buf))
    assert float(rows[1][4]) == float("-inf")


def test_generate_channel_seed_derivation_spreads():
    # channels at different trials differ
    a = generate_channel(6, trial_seeds(5, 6, 0)[0])
    b = generate_channel(6, trial_seeds(5, 6, 1)[0])
    assert not np.array_equal(a.g, b.g)
