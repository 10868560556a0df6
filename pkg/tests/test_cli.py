import csv
import math
import subprocess
import sys

import pytest

from dasris.cli import main
from dasris.model import generate_channel, write_channel_csv

SOLVE_FILE = """idx,g_re,g_im,hr_re,hr_im
1,1.0,0.0,1.0,0.0
hd,1.0,0.0,1.0,1.0
"""


@pytest.fixture
def single_element_channel(tmp_path):
    path = tmp_path / "chan.csv"
    path.write_text(SOLVE_FILE)
    return path


def test_solve_prints_configuration(single_element_channel, capsys):
    assert main(["solve", str(single_element_channel)]) == 0
    out = capsys.readouterr().out
    lines = dict(line.split(": ", 1) for line in out.strip().splitlines())
    assert lines["w"] == "+"
    assert lines["theta"] == "0"
    assert float(lines["power"]) == 4.0
    assert math.isclose(float(lines["snr_db"]), 6.020599913279624, rel_tol=1e-12)


def test_solve_verify_exhaustive(single_element_channel, capsys):
    assert main(["solve", str(single_element_channel), "--verify-exhaustive"]) == 0
    assert "verified: optimal" in capsys.readouterr().out


def test_solve_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("idx,g_re,g_im,hr_re,hr_im\n1,1.0,0.0,1.0,0.0\n")
    assert main(["solve", str(path)]) == 2
    err = capsys.readouterr().err
    assert "line 3" in err
    assert "footer" in err


def test_solve_missing_file_is_io_error(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "nope.csv")]) == 3


def test_solve_multi_element_output(tmp_path, capsys):
    path = tmp_path / "chan.csv"
    with open(path, "w") as fp:
        write_channel_csv(generate_channel(4, 3), fp)
    assert main(["solve", str(path)]) == 0
    out = capsys.readouterr().out
    lines = dict(line.split(": ", 1) for line in out.strip().splitlines())
    assert len(lines["w"]) == 4
    assert set(lines["w"]) <= {"+", "-"}
    theta = lines["theta"].split()
    assert len(theta) == 4
    assert set(theta) <= {"0", "pi"}
    for bit, angle in zip(lines["w"], theta):
        assert (bit == "+") == (angle == "0")


def test_solve_verify_respects_limit(tmp_path, capsys):
    path = tmp_path / "chan.csv"
    with open(path, "w") as fp:
        write_channel_csv(generate_channel(6, 3), fp)
    code = main(["solve", str(path), "--verify-exhaustive", "--exhaustive-limit", "4"])
    assert code == 4
    assert "4" in capsys.readouterr().err


def test_gen_writes_channel(tmp_path, capsys):
    out = tmp_path / "chan.csv"
    assert main(["gen", "--n", "8", "--seed", "5", "--out", str(out)]) == 0
    rows = list(csv.reader(open(out)))
    assert rows[0] == ["idx", "g_re", "g_im", "hr_re", "hr_im"]
    assert len(rows) == 10
    assert rows[-1][0] == "hd"


def test_gen_then_solve_roundtrip(tmp_path, capsys):
    out = tmp_path / "chan.csv"
    assert main(["gen", "--n", "8", "--seed", "5", "--out", str(out)]) == 0
    assert main(["solve", str(out), "--verify-exhaustive"]) == 0
    assert "verified: optimal" in capsys.readouterr().out


def test_gen_rejects_zero_elements(tmp_path, capsys):
    assert main(["gen", "--n", "0", "--out", str(tmp_path / "x.csv")]) == 2


def test_gen_no_los_writes_zero_direct_link(tmp_path):
    out = tmp_path / "chan.csv"
    assert main(["gen", "--n", "3", "--no-los", "--out", str(out)]) == 0
    footer = list(csv.reader(open(out)))[-1]
    assert footer[0] == "hd"
    assert float(footer[1]) == 0.0
    assert float(footer[2]) == 0.0


def test_gen_rejects_multiple_sizes(tmp_path, capsys):
    assert main(["gen", "--n", "3,4", "--out", str(tmp_path / "x.csv")]) == 2


def test_bench_writes_both_csvs(tmp_path, capsys):
    out = tmp_path / "results"
    code = main(["bench", "--n", "4,6", "--trials", "3", "--seed", "1",
                 "--methods", "das,greedy", "--out", str(out)])
    assert code == 0
    trials = list(csv.reader(open(out / "trials.csv")))
    agg = list(csv.reader(open(out / "aggregate.csv")))
    assert trials[0] == ["n", "trial", "method", "power", "snr_db", "wall_time_s"]
    assert len(trials) == 1 + 2 * 3 * 2
    assert agg[0] == ["n", "method", "mean_snr_db", "mean_power",
                      "total_time_s", "optimality_rate"]
    assert len(agg) == 1 + 2 * 2
    # stdout carries the aggregate csv as well
    assert "mean_snr_db" in capsys.readouterr().out


def test_bench_rejects_exhaustive_beyond_limit(tmp_path, capsys):
    code = main(["bench", "--n", "25", "--trials", "1", "--methods", "exhaustive",
                 "--out", str(tmp_path / "r")])
    assert code == 4
    assert "20" in capsys.readouterr().err


def test_bench_unknown_method(tmp_path, capsys):
    code = main(["bench", "--n", "4", "--methods", "sdp", "--out", str(tmp_path / "r")])
    assert code == 4


def test_bench_unwritable_out(capsys):
    code = main(["bench", "--n", "4", "--trials", "1",
                 "--out", "/proc/definitely/not/writable"])
    assert code == 3


def test_compare_prints_table(capsys):
    code = main(["compare", "--n", "4", "--trials", "2", "--seed", "0",
                 "--methods", "das,exhaustive"])
    assert code == 0
    out = capsys.readouterr().out
    assert "method" in out
    assert "das" in out
    assert "exhaustive" in out


def test_cli_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "dasris.cli", "--help"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "solve" in proc.stdout
    assert "bench" in proc.stdout


def test_no_los_flag_changes_bench_results(tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    assert main(["bench", "--n", "4", "--trials", "2", "--seed", "1",
                 "--out", str(out_a)]) == 0
    assert main(["bench", "--n", "4", "--trials", "2", "--seed", "1", "--no-los",
                 "--out", str(out_b)]) == 0
    rows_a = list(csv.reader(open(out_a / "trials.csv")))
    rows_b = list(csv.reader(open(out_b / "trials.csv")))
    assert [r[3] for r in rows_a[1:]] != [r[3] for r in rows_b[1:]]
