import csv
import io
import json

import numpy as np
import pytest

from selfsim.cli import main
from selfsim.config import ExperimentConfig, parse_config
from selfsim.csvio import path_to_csv_text, read_path_csv
from selfsim.errors import ConfigError, MalformedPath
from selfsim.process import Path, TimeGrid

SMALL = """
experiment = interior_prob   # comment
generator = fbm
hindex = 0.5
resolution = 64
coarse_resolution = 8
replicates = 20
master_seed = 7
"""


def test_parse_config_and_overrides():
    cfg = parse_config(SMALL)
    assert (cfg.experiment, cfg.resolution, cfg.master_seed, cfg.threshold) == \
        ("interior_prob", 64, 7, 0.99)
    cfg = parse_config(SMALL, master_seed=9, replicates=None, resolution=128)
    assert (cfg.master_seed, cfg.replicates, cfg.resolution) == (9, 20, 128)
    cfg = parse_config("experiment = stable_cf\ngenerator = stable\nu_values = 0.5, 1\n"
                       "cross_check = no\nthreshold = 0.9")
    assert cfg.u_values == (0.5, 1.0) and cfg.cross_check is False and cfg.threshold == 0.9
    assert parse_config("experiment = endpoint_interior").threshold == 0.95
    q = parse_config("experiment = interior_prob\nq = 2, 0.5; 0.5, 1")
    assert np.array_equal(q.build_spec().q, [[2.0, 0.5], [0.5, 1.0]])


@pytest.mark.parametrize("text", [
    "generator = fbm",
    "experiment = nope",
    "experiment = interior_prob\nbogus = 1",
    "experiment = interior_prob\nreplicates = many",
    "experiment = interior_prob\nhindex = 1.5",
    "experiment = staircase\ndim = 3",
    "experiment = winding_growth\ngenerator = stable",
    "experiment = stable_cf",
    "experiment = interior_prob\ngenerator = stable\nalpha = 1.0",
    "experiment = interior_prob\ngenerator = stable\nsigma = atoms",
    "experiment = interior_prob\nmaster_seed = -1",
    "experiment: [",
])
def test_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_config_roundtrip_dict():
    cfg = ExperimentConfig("staircase", resolution=32)
    d = cfg.to_dict()
    assert d["experiment"] == "staircase" and d["c_values"] == [0.5, 2.0]
    assert cfg.replace(resolution=16).resolution == 16


def test_path_csv_roundtrip():
    p = Path(TimeGrid([0.0, 0.1, 1.0 / 3.0]), [[0.0, 0.0], [1e-300, -2.5], [np.pi, 1e20]])
    q = read_path_csv(io.StringIO(path_to_csv_text(p)))
    assert q == p


@pytest.mark.parametrize("text", ["", "a,b\n1,2\n", "t,x1\n0,1,2\n", "t,x1\n0,zz\n", "t,x1\n"])
def test_path_csv_malformed(text):
    with pytest.raises(MalformedPath):
        read_path_csv(io.StringIO(text))


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_simulate_hull_wind(tmp_path, capsys):
    p = tmp_path / "p.csv"
    code, _, _ = _run(capsys, "simulate", "--resolution", "128", "--seed", "3", "--out", str(p))
    assert code == 0
    path = read_path_csv(p)
    assert len(path) == 129 and path.dim == 2
    code, out, _ = _run(capsys, "hull", str(p))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 129 and rows[0]["changed"] == "1"

    sp = tmp_path / "spiral.csv"
    t = np.exp(np.linspace(-4, 4, 801))
    spiral = Path(TimeGrid(t), np.column_stack([t * np.cos(np.log(t)), t * np.sin(np.log(t))]))
    sp.write_text(path_to_csv_text(spiral))
    code, out, _ = _run(capsys, "wind", str(sp), "--mode", "infinity", "--count", "4")
    assert code == 0
    nus = [float(r["nu"]) for r in csv.DictReader(io.StringIO(out))]
    assert nus == pytest.approx([1, 2, 3, 4], abs=1e-9)
    code, _, err = _run(capsys, "wind", str(sp), "--levels", "0.123")
    assert code == 3 and "error" in err


def test_cli_simulate_stable_events(tmp_path, capsys):
    ev = tmp_path / "ev.csv"
    code, out, _ = _run(capsys, "simulate", "--generator", "stable", "--truncation", "50",
                        "--resolution", "16", "--events", str(ev))
    assert code == 0 and out.startswith("t,x1,x2")
    assert len(ev.read_text().splitlines()) == 51
    code, _, _ = _run(capsys, "simulate", "--events", str(ev))
    assert code == 3


def test_cli_experiment_and_exit_codes(tmp_path, capsys):
    cfg = tmp_path / "c.conf"
    cfg.write_text(SMALL)
    out = tmp_path / "r.json"
    agg = tmp_path / "a.csv"
    code, _, err = _run(capsys, "experiment", str(cfg), "--out", str(out), "--csv", str(agg),
                        "--replicates", "10")
    rep = json.loads(out.read_text())
    assert code in (0, 2)
    assert code == (0 if all(rep["verdicts"].values()) else 2)
    assert len(rep["replicates"]) == 10 and rep["config"]["replicates"] == 10
    assert {"config", "replicates", "aggregates", "verdicts", "seeds", "version"} <= rep.keys()
    assert "interior_probability" in err
    rows = dict(csv.reader(io.StringIO(agg.read_text())))
    assert "fine.p_hat" in rows and rows["verdict.interior_probability"] in ("True", "False")

    bad = tmp_path / "bad.conf"
    bad.write_text("experiment = interior_prob\nbogus = 2\n")
    assert _run(capsys, "experiment", str(bad))[0] == 3
    assert _run(capsys, "experiment", str(tmp_path / "missing.conf"))[0] == 3
    assert _run(capsys, "nonsense")[0] == 3


def test_cli_experiment_verdict_failure(tmp_path, capsys):
    cfg = tmp_path / "ray.conf"
    cfg.write_text("experiment = interior_prob\ngenerator = ray\nresolution = 32\n"
                   "replicates = 4\n")
    assert _run(capsys, "experiment", str(cfg), "--out", str(tmp_path / "r.json"))[0] == 2


def test_cli_runtime_error(tmp_path, capsys):
    p = tmp_path / "through_origin.csv"
    p.write_text("t,x1,x2\n0.5,1,0\n1,0,0\n2,0,1\n")
    code, _, err = _run(capsys, "wind", str(p), "--levels", "2", "--anchor", "0.5")
    assert code == 4 and "error" in err


def test_cli_selfcheck(capsys):
    code, out, _ = _run(capsys, "selfcheck")
    assert code == 0
    assert out.count("PASS") == len(out.strip().splitlines())


def test_cli_version(capsys):
    assert _run(capsys, "--version")[0] == 0
