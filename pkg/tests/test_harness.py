"""Batch harness: instance building, Monte-Carlo trials, bound checks."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from hfreetest import (
    ExperimentConfig,
    compiled_available,
    lemma_check,
    query_scaling_experiment,
    report,
    run_trials,
    wilson_interval,
)
from hfreetest.errors import ConfigError, ResourceBudgetError
from hfreetest.harness import CSV_COLUMNS, build_instance, build_params

PRACTICAL = {
    "epsilon": "1/2",
    "adm_bound": 2,
    "radius": 3,
    "mode": "practical",
    "overrides": {"num_seeds": 10, "num_rounds": 3, "queries_per_vertex": 4},
}


def _config(**kw):
    base = dict(
        generator={"name": "disjoint_copies", "k": 4},
        pattern="k3",
        params=dict(PRACTICAL),
        trials=10,
        seed_root=7,
        record_timing=False,
    )
    base.update(kw)
    return ExperimentConfig(**base)


# ---------------------------------------------------------------------------
# instance and parameter building


def test_build_instance_builders():
    g, cert = build_instance({"name": "disjoint_copies", "k": 3, "pad": 2}, "k3", 0)
    assert g.n == 11 and cert is not None
    g, cert = build_instance({"name": "planted", "n": 30, "epsilon": "1/10"}, "k3", 5)
    assert g.n == 30 and cert.farness_lower_bound == 3
    g, cert = build_instance({"name": "grid", "width": 3, "height": 2}, "c4", 0)
    assert g.n == 6 and g.m == 7 and cert is None
    g, _ = build_instance({"name": "path", "n": 5}, "p3", 0)
    assert g.m == 4
    g, _ = build_instance({"name": "cycle", "n": 5}, "k3", 0)
    assert g.m == 5
    g, _ = build_instance({"name": "star", "n": 5}, "k3", 0)
    assert g.m == 4
    g, _ = build_instance({"name": "empty", "n": 4}, "k3", 0)
    assert g.m == 0
    g, _ = build_instance({"name": "random_bounded_degree", "n": 20, "degree": 3}, "k3", 9)
    assert g.n == 20


def test_build_instance_from_file(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("3 2\n0 1\n1 2\n")
    g, cert = build_instance({"name": "file", "path": str(path)}, "p3", 0)
    assert g.n == 3 and g.m == 2 and cert is None


def test_build_instance_errors():
    with pytest.raises(ConfigError):
        build_instance({}, "k3", 0)  # no name
    with pytest.raises(ConfigError):
        build_instance({"name": "warp"}, "k3", 0)
    with pytest.raises(ConfigError):
        build_instance({"name": "disjoint_copies"}, "k3", 0)  # k missing
    with pytest.raises(ConfigError):
        build_instance({"name": "cycle", "n": 5, "extra": 1}, "k3", 0)
    with pytest.raises(ConfigError):
        build_instance({"name": "cycle", "n": 2}, "k3", 0)


def test_build_params():
    p = build_params(dict(PRACTICAL))
    assert p.num_seeds == 10 and p.queries_per_vertex == 4
    with pytest.raises(ConfigError):
        build_params({"adm_bound": 2, "radius": 3})  # epsilon missing
    with pytest.raises(ConfigError):
        build_params({**PRACTICAL, "mystery": 1})
    with pytest.raises(ConfigError):
        build_params({**PRACTICAL, "epsilon": "3/2"})  # out of range


def test_experiment_config_round_trip():
    cfg = _config(jobs=2, out="somewhere.csv")
    back = ExperimentConfig.from_json(cfg.to_json())
    assert back == cfg
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json("{nope")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json("[1, 2]")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json("{}")


# ---------------------------------------------------------------------------
# trial batches


def test_run_trials_pattern_free_instance_never_rejects():
    cfg = _config(generator={"name": "cycle", "n": 12}, trials=25)
    res = run_trials(cfg)
    assert res.summary["rejects"] == 0 and res.summary["aborts"] == 0
    assert res.summary["accepts"] == 25
    assert res.summary["rejection_rate"] == 0.0
    assert res.summary["certified_farness_lower_bound"] is None
    assert all(r.verdict == "accept" for r in res.records)


def test_run_trials_far_instance_summary_consistency():
    cfg = _config(trials=30)
    res = run_trials(cfg)
    s = res.summary
    assert s["accepts"] + s["rejects"] + s["aborts"] == 30
    assert s["rejects"] > 0  # four tiny triangles and ten seeds
    assert s["certified_farness_lower_bound"] == 4
    lo, hi = wilson_interval(s["rejects"], 30)
    assert s["rejection_wilson_low"] == lo and s["rejection_wilson_high"] == hi
    assert s["queries_max"] == max(r.queries for r in res.records)
    assert s["example_witness_edges"]  # at least one reject carries a witness
    # CSV shape
    lines = res.csv_text.strip().split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 31
    first = lines[1].split(",")
    assert first[0] == s["instance_id"] and first[5] in ("accept", "reject")


def test_run_trials_parallel_csv_is_byte_identical():
    base = _config(trials=12)
    wide = _config(trials=12, jobs=4)
    assert run_trials(base).csv_text == run_trials(wide).csv_text


def test_run_trials_abort_accounting():
    params = {**PRACTICAL, "query_budget": 2, "force": True}
    cfg = _config(params=params, trials=6)
    res = run_trials(cfg)
    assert res.summary["aborts"] == 6
    assert all(r.verdict == "abort" for r in res.records)
    assert all(r.queries <= 4 for r in res.records)


def test_run_trials_writes_outputs(tmp_path):
    out = tmp_path / "run.csv"
    cfg = _config(trials=5, out=str(out))
    res = run_trials(cfg)
    assert out.read_text() == res.csv_text
    summary = json.loads((tmp_path / "run.summary.json").read_text())
    assert summary["trials"] == 5


def test_run_trials_validates_counts():
    with pytest.raises(ConfigError):
        run_trials(_config(trials=-1))
    with pytest.raises(ConfigError):
        run_trials(_config(jobs=0))


def test_wilson_interval():
    assert wilson_interval(0, 0) == (0.0, 0.0)
    lo, hi = wilson_interval(10, 10)
    assert 0.7 < lo < 1.0 and hi <= 1.0 + 1e-12
    lo0, hi0 = wilson_interval(0, 10)
    assert abs(lo0) < 1e-12 and hi0 < 0.4
    mid = wilson_interval(5, 10)
    assert mid[0] < 0.5 < mid[1]


def test_report_text_and_json():
    res = run_trials(_config(trials=8))
    text, js = report(res)
    assert "experiment report" in text and "rejection" in text
    doc = json.loads(js)
    assert doc == res.summary


def test_query_scaling_experiment():
    table = query_scaling_experiment(
        "k3", [30, 60], dict(PRACTICAL), trials=5, seed_root=3, epsilon=Fraction(1, 10)
    )
    assert [row["n"] for row in table["rows"]] == [30, 60]
    for row in table["rows"]:
        assert row["queries_max"] <= table["ceiling"]
    with pytest.raises(ConfigError):
        query_scaling_experiment("k3", [2], dict(PRACTICAL), trials=1, seed_root=0)


# ---------------------------------------------------------------------------
# probability-bound spot checks


def test_lemma_check_passes_on_cheap_fixtures():
    for name in ("chain-end-discovery", "minimum-discovery", "edge-completion"):
        rep = lemma_check(name, trials=60, seed_root=11)
        assert rep["status"] == "PASS", rep
        assert rep["observed"] >= rep["bound"]
        assert all(h["holds"] for h in rep["hypotheses"])


def test_lemma_check_seed_hits_copy():
    rep = lemma_check("seed-hits-copy", trials=40, seed_root=2)
    assert rep["status"] == "PASS", rep


def test_lemma_check_nadir_discovery():
    rep = lemma_check("nadir-discovery", trials=40, seed_root=4)
    assert rep["status"] == "PASS", rep


def test_lemma_check_vacuous_bound_is_inconclusive():
    rep = lemma_check(
        "chain-end-discovery", trials=5, overrides={"queries_per_vertex": 1}
    )
    assert rep["status"] == "INCONCLUSIVE"
    assert rep["observed"] is None and rep["trials"] == 0


def test_lemma_check_failed_hypothesis_is_inconclusive():
    # raising the degree threshold above the weakness threshold breaks the
    # first hypothesis while leaving the bound itself non-vacuous
    rep = lemma_check("minimum-discovery", trials=5, overrides={"alpha": 100})
    assert rep["status"] == "INCONCLUSIVE"
    assert any(not h["holds"] for h in rep["hypotheses"])
    # with hypothesis verification off, the same run is judged on frequency only
    rep2 = lemma_check(
        "minimum-discovery", trials=30, overrides={"alpha": 100}, verify_hypotheses=False
    )
    assert rep2["hypotheses"] == [] and rep2["status"] in ("PASS", "FAIL")


def test_lemma_check_validation():
    with pytest.raises(ConfigError):
        lemma_check("no-such-bound")
    with pytest.raises(ConfigError):
        lemma_check("minimum-discovery", trials=0)
    with pytest.raises(ConfigError):
        lemma_check("minimum-discovery", overrides={"zeta": 1})


def test_many_nadirs_requires_compiled_kernel():
    if compiled_available():
        rep = lemma_check("many-nadirs", trials=2, seed_root=1)
        assert rep["status"] in ("PASS", "FAIL")
        assert all(h["holds"] for h in rep["hypotheses"])
    else:
        with pytest.raises(ResourceBudgetError):
            lemma_check("many-nadirs", trials=1)
