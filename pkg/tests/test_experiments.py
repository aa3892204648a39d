import json
import math

import numpy as np
import pytest

from selfsim.config import ExperimentConfig
from selfsim.errors import ConfigError, OriginTooClose
from selfsim.experiments import (
    generate_paths,
    lamperti_fbm_autocovariance,
    run_experiment,
    run_replicates,
    winding_grid,
)
from selfsim.process import uniform_grid

from oracles import lamperti_autocov_from_kernel


def cfg(experiment, **kw):
    base = dict(replicates=24, block_size=8, master_seed=123)
    base.update(kw)
    return ExperimentConfig(experiment, **base)


@pytest.mark.parametrize("c", [
    cfg("interior_prob", resolution=64, coarse_resolution=8),
    cfg("endpoint_interior", resolution=32),
    cfg("staircase", resolution=64, coarse_resolution=16),
    cfg("winding_growth", levels=3, per_unit_log=16),
    cfg("self_similarity_ks", generator="stable", alpha=0.8, truncation=200),
    cfg("stable_cf", generator="stable", truncation=100),
])
def test_records_independent_of_workers(c):
    ref = run_experiment(c).replicates_json()
    for w in (4, 16):
        assert run_experiment(c.replace(workers=w)).replicates_json() == ref


def test_report_shape_and_seed_audit():
    rep = run_experiment(cfg("interior_prob", resolution=32, coarse_resolution=8))
    d = json.loads(rep.to_json())
    assert d["version"] == rep.version and d["config"]["master_seed"] == 123
    assert [r["replicate"] for r in d["replicates"]] == list(range(24))
    assert d["seeds"]["first"] == d["replicates"][0]["seed"]
    assert d["seeds"]["last"] == d["replicates"][-1]["seed"]
    assert rep.aggregates["replicates_ok"] + rep.aggregates["replicates_failed"] == 24
    assert all(isinstance(v, bool) for v in rep.verdicts.values())
    assert "fine.p_hat" in rep.aggregates_csv()


def test_quarantine_accounting():
    c = cfg("interior_prob", replicates=10, block_size=3)

    def per_block(seeds):
        if 3 in [i for i, s in enumerate(seeds)] and len(seeds) == 1:
            raise RuntimeError("block")
        return seeds

    def per_rep(seeds, j):
        if j == 1:
            err = OriginTooClose(0.5, 1e-12)
            err.level = 2
            raise err
        return {"x": 1}

    recs = run_replicates(c, per_block, per_rep)
    assert [r["replicate"] for r in recs] == list(range(10))
    failed = [r for r in recs if r["status"] == "failed"]
    assert [r["replicate"] for r in failed] == [1, 4, 7]
    assert all(r["error"] == "OriginTooClose" and r["level"] == 2 for r in failed)

    def bad_block(seeds):
        raise RuntimeError("boom")

    recs = run_replicates(c, bad_block, per_rep)
    assert all(r["status"] == "failed" and r["reason"] == "boom" for r in recs)


def test_generate_paths_stubs():
    g = uniform_grid(4)
    c = ExperimentConfig("interior_prob", generator="ray")
    x = generate_paths(c, g, [1, 2])
    assert x.shape == (2, 5, 2) and np.all(x[:, :, 1] == 0)
    with pytest.raises(ConfigError):
        generate_paths(ExperimentConfig("interior_prob", generator="circle", dim=3), g, [1])


def test_winding_grid_contains_levels():
    g = winding_grid(3, 4)
    assert g.times[0] == 0.0
    for k in range(-3, 4):
        assert math.exp(k) in set(g.times.tolist())


@pytest.mark.parametrize("h,lag", [(0.5, 1.0), (0.7, 5.0), (0.3, 0.2)])
def test_lamperti_autocovariance_formula(h, lag):
    assert lamperti_fbm_autocovariance(h, lag) == pytest.approx(
        lamperti_autocov_from_kernel(h, 0.0, lag), rel=1e-12)


# -- negative controls: each experiment reports its stub correctly -----------

def test_interior_negative_controls():
    rep = run_experiment(cfg("interior_prob", generator="ray", resolution=64,
                             coarse_resolution=8, replicates=4))
    assert rep.aggregates["fine"]["p_hat"] == 0.0
    assert not rep.verdicts["interior_probability"]
    # a 270 degree arc around the origin: trivially interior, no refinement gain
    rep = run_experiment(cfg("interior_prob", generator="circle", resolution=64,
                             coarse_resolution=8, replicates=4))
    assert rep.aggregates["fine"]["p_hat"] == 1.0
    assert rep.verdicts["interior_probability"] and not rep.verdicts["refinement_increase"]
    rep = run_experiment(cfg("interior_prob", generator="stable", dim=1, sigma="one-sided",
                             alpha=0.5, truncation=100, resolution=32, coarse_resolution=8,
                             replicates=8))
    assert rep.aggregates["fine"]["p_hat"] == 0.0


def test_endpoint_negative_control():
    rep = run_experiment(cfg("endpoint_interior", generator="ray", resolution=16, replicates=4))
    assert not rep.verdicts["endpoint_probability"]
    assert rep.verdicts["reversal_identity"]


def test_staircase_negative_control():
    rep = run_experiment(cfg("staircase", generator="circle", resolution=64,
                             coarse_resolution=16, replicates=4))
    assert not rep.verdicts["staircase_decrease"]
    assert rep.verdicts["functional_monotonicity"]


def test_winding_negative_controls():
    rep = run_experiment(cfg("winding_growth", generator="spiral", levels=4, per_unit_log=16,
                             replicates=4))
    assert rep.verdicts["zero_running_max_growth"]
    assert not rep.verdicts["zero_running_min_growth"]
    assert rep.verdicts["reflection_exact"]
    rep = run_experiment(cfg("winding_growth", generator="ray", levels=4, per_unit_log=16,
                             replicates=4))
    assert not rep.verdicts["infinity_running_max_growth"]


def test_distribution_negative_control():
    rep = run_experiment(cfg("self_similarity_ks", generator="ray", replicates=50))
    assert not rep.passed


def test_fbm_distribution_checks_smoke():
    for exp in ("self_similarity_ks", "reversibility_ks", "stationarity_ks"):
        rep = run_experiment(cfg(exp, hindex=0.7, replicates=400, block_size=100,
                                 resolution=16))
        assert rep.aggregates["replicates_failed"] == 0
        ks = [v for v in rep.aggregates.values() if isinstance(v, dict) and "p_value" in v]
        assert len(ks) >= 2 and all(0 <= v["p_value"] <= 1 for v in ks)


def test_stable_cf_reports_both_estimators():
    rep = run_experiment(cfg("stable_cf", generator="stable", truncation=50, replicates=200,
                             block_size=100, u_values=(1.0,)))
    entry = rep.aggregates["u=1"]
    assert {"closed_form_re", "raw", "tail_corrected"} <= entry.keys()
    assert entry["tail_corrected"]["se_re"] > 0
