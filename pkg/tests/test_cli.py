import json

import numpy as np
import pytest

from kpzlab import cli, gridio
from kpzlab.errors import ConfigError

MINI_RUN = """
[run]
model = "deposition"
master_seed = 5
replicates = 2
t_max = 20.0
snap_times = [10.0, 20.0]

[run.params]
kind = "ballistic"
width = 16
"""

MINI_SOLVE = """
[solve]
solver = "lpp"
master_seed = 6
replicates = 3

[solve.params]
nx = 12
ny = 12
kind = "exponential"
"""


def _write(tmp_path, text, name="cfg.toml"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_config_rejects_unknown_keys(tmp_path):
    bad = MINI_RUN.replace('width = 16', 'width = 16\nbogus = 1')
    with pytest.raises(ConfigError, match="bogus"):
        cli.load_config(_write(tmp_path, bad))


def test_config_rejects_unknown_model(tmp_path):
    bad = MINI_RUN.replace('"deposition"', '"percolation"')
    with pytest.raises(ConfigError, match="unknown model"):
        cli.load_config(_write(tmp_path, bad))


def test_config_needs_run_or_solve(tmp_path):
    with pytest.raises(ConfigError):
        cli.load_config(_write(tmp_path, "[other]\nx = 1\n"))


def test_simulate_deterministic(tmp_path):
    cfg = _write(tmp_path, MINI_RUN)
    for out in ("out1", "out2"):
        code = cli.main(["simulate", "--config", str(cfg), "--out", str(tmp_path / out)])
        assert code == 0
    for name in ["deposition_rep0000.csv", "deposition_rep0001.csv", "manifest.json"]:
        assert (tmp_path / "out1" / name).read_bytes() == \
            (tmp_path / "out2" / name).read_bytes()
    manifest = json.loads((tmp_path / "out1" / "manifest.json").read_text())
    assert manifest["stream_ids"] == [0, 1]
    assert manifest["version"]


def test_seed_override_changes_output(tmp_path):
    cfg = _write(tmp_path, MINI_RUN)
    cli.main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "a")])
    cli.main(["simulate", "--config", str(cfg), "--out", str(tmp_path / "b"),
              "--seed", "99"])
    assert (tmp_path / "a" / "deposition_rep0000.csv").read_bytes() != \
        (tmp_path / "b" / "deposition_rep0000.csv").read_bytes()


def test_solve_pipeline_and_estimate(tmp_path):
    cfg = _write(tmp_path, MINI_SOLVE, "solve.toml")
    assert cli.main(["solve", "--config", str(cfg), "--out", str(tmp_path / "s")]) == 0
    values = gridio.read_samples_csv(tmp_path / "s" / "lpp_values.csv")
    assert values.size == 3
    out_json = tmp_path / "est.json"
    code = cli.main(["estimate", "--kind", "ks", "--input",
                     str(tmp_path / "s" / "lpp_values.csv"),
                     "--reference", "normal", "--out", str(out_json)])
    assert code == 0
    est = json.loads(out_json.read_text())
    assert 0.0 <= est["statistic"] <= 1.0


def test_tw_table_golden_mismatch(tmp_path):
    assert cli.main(["tw-table", "--ensemble", "GUE",
                     "--out", str(tmp_path / "tw")]) == 0
    golden = tmp_path / "tw" / "tw_gue.csv"
    rows = gridio.read_tw_table_csv(golden)
    assert rows.shape[1] == 3
    # corrupt one CDF entry and require a nonzero exit
    text = golden.read_text().splitlines()
    parts = text[800].split(",")
    parts[1] = repr(float(parts[1]) + 1e-4)
    text[800] = ",".join(parts)
    corrupted = tmp_path / "corrupted.csv"
    corrupted.write_text("\n".join(text) + "\n")
    code = cli.main(["tw-table", "--ensemble", "GUE", "--out", str(tmp_path / "tw2"),
                     "--golden", str(corrupted)])
    assert code != 0
    # the committed golden must round-trip clean
    code = cli.main(["tw-table", "--ensemble", "GUE", "--out", str(tmp_path / "tw3"),
                     "--golden", str(golden)])
    assert code == 0


def test_accept_subcommand_fast_criterion(tmp_path):
    code = cli.main(["accept", "--criteria", "c02_lpp_coupling",
                     "--out", str(tmp_path / "acc")])
    assert code == 0
    report = json.loads((tmp_path / "acc" / "acceptance.json").read_text())
    assert report[0]["id"] == "c02_lpp_coupling"
    assert report[0]["passed"] is True


def test_report_data_validates_which(tmp_path):
    assert cli.main(["report-data", "--which", "nonsense",
                     "--out", str(tmp_path / "r")]) == 2
