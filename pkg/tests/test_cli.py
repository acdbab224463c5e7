import json

import pytest

from circumnav.cli import main


def write_config(tmp_path, **fields):
    base = {"duration": 300.0, "runs": 2, "seed": 3}
    base.update(fields)
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(base))
    return path


def test_simulate_writes_outputs(tmp_path, capsys):
    cfg = write_config(tmp_path)
    out = tmp_path / "out"
    code = main(["simulate", "--config", str(cfg), "--out-dir", str(out)])
    assert code == 0
    assert (out / "run_0.csv").exists() and (out / "run_1.csv").exists()
    doc = json.loads((out / "report.json").read_text())
    assert doc["n_runs"] == 2 and doc["all_passed"]
    assert "all passed: True" in capsys.readouterr().out


def test_flags_override_file(tmp_path):
    cfg = write_config(tmp_path, law="smooth", k=0.12)
    out = tmp_path / "out"
    code = main(["simulate", "--config", str(cfg), "--out-dir", str(out), "--controller", "sign",
                 "--runs", "1", "--seed", "9", "--dt", "0.005", "--duration", "400",
                 "--rdot", "filter:0.5", "--no-traces"])
    doc = json.loads((out / "report.json").read_text())
    assert doc["config"]["law"] == "sign"
    assert doc["config"]["seed"] == 9
    assert doc["config"]["dt"] == 0.005
    assert doc["config"]["rdot_source"] == "filter:0.5"
    assert doc["n_runs"] == 1
    assert not (out / "run_0.csv").exists()
    assert code in (0, 1)


def test_compensate_flag(tmp_path):
    out = tmp_path / "out"
    main(["simulate", "--config", str(write_config(tmp_path, runs=1)), "--compensate-rd",
          "--out-dir", str(out), "--no-traces"])
    doc = json.loads((out / "report.json").read_text())
    assert doc["config"]["compensate_rd"] is True
    assert doc["config"]["effective_r_d"] == pytest.approx(8.66025404)


def test_failed_verdict_gives_nonzero_exit(tmp_path):
    # 40 s is too short to converge onto the orbit
    cfg = write_config(tmp_path, duration=40.0, runs=1)
    assert main(["simulate", "--config", str(cfg), "--out-dir", str(tmp_path / "o"),
                 "--no-traces"]) == 1


def test_unknown_key_is_config_error(tmp_path, capsys):
    cfg = write_config(tmp_path, bogus=1)
    assert main(["simulate", "--config", str(cfg), "--out-dir", str(tmp_path / "o")]) == 2
    assert "unknown config keys: bogus" in capsys.readouterr().err


def test_bad_rdot_flag(tmp_path):
    cfg = write_config(tmp_path)
    assert main(["simulate", "--config", str(cfg), "--rdot", "filter:x",
                 "--out-dir", str(tmp_path / "o")]) == 2


def test_missing_config_file(tmp_path):
    assert main(["simulate", "--config", str(tmp_path / "nope.json"),
                 "--out-dir", str(tmp_path / "o")]) == 2
