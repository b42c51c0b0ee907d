import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from guidedphoton import cli, scenarios
from guidedphoton.errors import ConfigError

ROOT = Path(__file__).resolve().parents[1]
SHIPPED = sorted((ROOT / "scenarios").glob("*.json"))


def cfg(**params):
    return json.dumps(params)


# ------------------------------------------------------------ parsing


def test_non_power_of_two_grid_names_the_key():
    with pytest.raises(ConfigError) as exc:
        scenarios.parse_config(cfg(kind="packet_run", omega_c=3.0, N=1000))
    assert exc.value.path == "N"
    assert "N" in str(exc.value)


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError, match="duplicate key 'omega_c'"):
        scenarios.parse_config('{"kind": "packet_run", "omega_c": 3, "omega_c": 4}')


def test_unknown_key_rejected():
    with pytest.raises(ConfigError) as exc:
        scenarios.parse_config(cfg(kind="identity_suite", sampels=3))
    assert exc.value.path == "sampels"


def test_syntax_error_reports_position():
    with pytest.raises(ConfigError, match="line 3, column"):
        scenarios.parse_config('{\n  "kind": "identity_suite",\n  "samples" 3\n}')


@pytest.mark.parametrize(
    "text,path",
    [
        (cfg(kind="tunneling_scan", omega=5.0, lead_cutoff=3.0), "barrier_cutoff"),
        (cfg(kind="nonsense"), "kind"),
        (cfg(kind="identity_suite", samples=2.5), "samples"),
        (cfg(kind="identity_suite", samples=True), "samples"),
        (cfg(kind="packet_run", omega_c="3"), "omega_c"),
        (cfg(kind="packet_run", omega_c=3.0, branch="up"), "branch"),
        (cfg(kind="mode_table", b1=1.0, b2=0.5, n_max=0), "n_max"),
    ],
)
def test_schema_violations(text, path):
    with pytest.raises(ConfigError) as exc:
        scenarios.parse_config(text)
    assert exc.value.path == path


def test_top_level_must_be_object():
    with pytest.raises(ConfigError):
        scenarios.parse_config("[1, 2]")


def test_defaults_and_derived_values():
    c = scenarios.parse_config(cfg(kind="packet_run", omega_c=4.0))
    assert c["L"] == 50.0 and c["sigma"] == 2.5
    assert c.name == "packet_run" and c.seed == 0
    assert scenarios.parse_config(cfg(kind="identity_suite"), seed=7).seed == 7


# ------------------------------------------------------------ runners


def test_mode_table_scenario():
    result = scenarios.run(scenarios.parse_config(cfg(kind="mode_table", b1=1.0, b2=0.5)))
    assert len(result.columns["n"]) == 9
    assert result.columns["cutoff"][0] == pytest.approx(math.pi)
    assert result.columns["cutoff"][1] == pytest.approx(math.pi * math.sqrt(5))
    assert result.passed


def test_empty_table_gives_header_only_csv():
    result = scenarios.ScenarioResult(scenarios.parse_config(cfg(kind="identity_suite")), {"a": [], "b": []})
    assert scenarios.to_csv(result) == "a,b\n"


def test_json_round_trip():
    result = scenarios.run(scenarios.parse_config(cfg(kind="tunneling_scan", omega=5.0, lead_cutoff=3.0, barrier_cutoff=6.0)))
    back = scenarios.load_columns(scenarios.to_json(result))
    assert back == result.columns
    assert result.passed


def test_csv_round_trips_exactly():
    result = scenarios.run(scenarios.parse_config(cfg(kind="mode_table", b1=1.3, b2=0.4, plasma_frequency=0.7)))
    lines = scenarios.to_csv(result).splitlines()
    values = [float(v) for v in lines[1].split(",")]
    assert values == [result.columns[k][0] for k in result.columns]


def test_identity_suite_passes():
    result = scenarios.run(scenarios.parse_config(cfg(kind="identity_suite", seed=3)))
    assert result.passed, [v for v in result.verdicts if not v.passed]


def test_library_errors_are_wrapped():
    config = scenarios.parse_config(cfg(kind="tunneling_scan", omega=2.0, lead_cutoff=3.0, barrier_cutoff=6.0))
    with pytest.raises(scenarios.ScenarioError, match="tunneling_scan"):
        scenarios.run(config)


def test_metadata_has_no_wall_time():
    result = scenarios.run(scenarios.parse_config(cfg(kind="identity_suite")))
    assert "wall" not in json.dumps(result.metadata())


# ------------------------------------------------------------ CLI


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_cli_exit_codes(tmp_path, capsys):
    good = write(tmp_path, "good.json", cfg(kind="mode_table", b1=1.0, b2=0.5))
    bad = write(tmp_path, "bad.json", cfg(kind="packet_run", omega_c=3.0, N=1000))
    numerical = write(tmp_path, "num.json", cfg(kind="tunneling_scan", omega=2.0, lead_cutoff=3.0, barrier_cutoff=6.0))
    failing = write(tmp_path, "fail.json", cfg(kind="identity_suite", tolerance=-1.0))
    out = tmp_path / "out"
    assert cli.main(["run", str(good), "--out", str(out)]) == 0
    assert cli.main(["run", str(bad), "--out", str(out)]) == 2
    assert "N" in capsys.readouterr().err
    assert cli.main(["run", str(numerical), "--out", str(out)]) == 3
    assert cli.main(["run", str(failing), "--out", str(out)]) == 1
    assert cli.main(["run", str(tmp_path / "missing.json")]) == 2
    assert cli.main(["validate", str(good)]) == 0
    assert cli.main(["list-scenarios"]) == 0
    assert "packet_run" in capsys.readouterr().out


def test_cli_output_dir_from_environment(tmp_path, monkeypatch):
    good = write(tmp_path, "good.json", cfg(kind="mode_table", b1=1.0, b2=0.5, name="table"))
    monkeypatch.setenv(scenarios.OUTPUT_DIR_ENV, str(tmp_path / "env_out"))
    assert cli.main(["run", str(good), "--format", "json"]) == 0
    assert (tmp_path / "env_out" / "table.json").exists()


def test_seed_changes_randomised_output(tmp_path):
    config = write(tmp_path, "ids.json", cfg(kind="identity_suite", samples=5))
    cli.main(["run", str(config), "--out", str(tmp_path / "a"), "--seed", "1"])
    cli.main(["run", str(config), "--out", str(tmp_path / "b"), "--seed", "2"])
    a = (tmp_path / "a" / "identity_suite.csv").read_bytes()
    b = (tmp_path / "b" / "identity_suite.csv").read_bytes()
    assert a != b


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_byte_identical_reruns(tmp_path, fmt):
    config = write(tmp_path, "ids.json", cfg(kind="identity_suite", samples=20, seed=11))
    for d in ("a", "b"):
        assert cli.main(["run", str(config), "--out", str(tmp_path / d), "--format", fmt]) == 0
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert files
    for name in files:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_shipped_scenarios_present():
    assert {p.stem for p in SHIPPED} == {"identity_suite", "packet_run", "tunneling_scan"}


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.stem)
def test_shipped_scenarios_exit_zero(path, tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "guidedphoton", "run", str(path), "--out", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "FAIL" not in proc.stdout
