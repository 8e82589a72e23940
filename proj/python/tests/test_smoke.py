import math

import pytest

import oee_sim

SHORT = {"duration": 200.0, "velocity_bucket": 100.0}


def test_steering_scale_matches_closed_form():
    for alpha in (0.0, 0.7, -0.7, math.pi / 2, math.pi):
        expected = ((math.pi - abs(alpha)) / math.pi) ** 2
        assert oee_sim.steering_scale(alpha) == pytest.approx(expected, abs=1e-12)


def test_death_interval():
    assert [oee_sim.death_interval(p) for p in (7, 14, 23)] == [18.0, 11.0, 2.0]


def test_symmetry_baseline_near_two_thirds():
    assert oee_sim.random_symmetry_baseline(100_000) == pytest.approx(2 / 3, abs=0.01)


def test_attribution_undefined_without_catches():
    assert oee_sim.attribution(2, 3, 0, 0) == (pytest.approx(2 / 3), None)


def test_default_config_round_trips():
    cfg = oee_sim.default_config()
    assert cfg["duration"] == 6000.0
    assert oee_sim.config_hash(cfg) == oee_sim.config_hash({})
    assert oee_sim.config_hash({"seed": 9}) == oee_sim.config_hash({})


def test_invalid_config_raises():
    with pytest.raises(ValueError):
        oee_sim.run({"mutation_sigma": -1.0})
    with pytest.raises(ValueError):
        oee_sim.run({"not_a_key": 1})


def test_run_is_deterministic_and_replayable(tmp_path):
    cfg = dict(SHORT, seed=4)
    a = oee_sim.run(cfg, str(tmp_path))
    b = oee_sim.run(cfg)
    assert a == b
    assert a["records"] > 30
    assert len(a["series"]) > 0

    replayed = oee_sim.replay(str(tmp_path / "run_4.jsonl"), cfg)
    assert replayed["series"] == a["series"]
    assert replayed["summary"] == a["summary"]

    with pytest.raises(oee_sim.ValidationError):
        oee_sim.replay(str(tmp_path / "run_4.jsonl"), dict(cfg, catch_radius=2.0))


def test_batch_pools_counters():
    result = oee_sim.batch(SHORT, n_runs=2, seeds=[3, 5], threads=1)
    assert [r["seed"] for r in result["runs"]] == [3, 5]
    total = sum(r["prey_caught_total"] for r in result["runs"])
    assert result["pooled"]["prey_caught_total"] == total
