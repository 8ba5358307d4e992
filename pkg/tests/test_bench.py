import csv
import io
import math

import numpy as np
import pytest

from gmdm.bench import BenchmarkSpec, ModelSpec, run_montecarlo, sample_goals, summarize
from gmdm.kinematics import Pose, VehicleLimits
from gmdm.planners import Variant, best_path, enumerate_candidates


def test_model_spec_parse():
    assert ModelSpec.parse("dubins") == ModelSpec(Variant.GMDM, 1)
    assert ModelSpec.parse("GMDM-prime:3") == ModelSpec(Variant.GMDM_PRIME, 3)
    assert ModelSpec.parse("gmdm:2").name == "gmdm:2"
    assert ModelSpec(Variant.GMDM_PRIME, 1).name == "dubins"
    for bad in ("gmdm", "foo:2", "gmdm:x"):
        with pytest.raises(ValueError):
            ModelSpec.parse(bad)


def test_goals_deterministic_and_in_disk():
    g = sample_goals(2000, 3.0, 7)
    assert np.array_equal(g, sample_goals(2000, 3.0, 7))
    assert not np.array_equal(g, sample_goals(2000, 3.0, 8))
    assert np.all(np.hypot(g[:, 0], g[:, 1]) <= 3.0)
    assert np.all((g[:, 2] >= 0) & (g[:, 2] < 2 * math.pi))
    # uniform over area: about a quarter fall inside half the radius
    assert abs(np.mean(np.hypot(g[:, 0], g[:, 1]) < 1.5) - 0.25) < 0.03


def test_spec_validation():
    with pytest.raises(ValueError):
        BenchmarkSpec(trials=0)
    with pytest.raises(ValueError):
        BenchmarkSpec(radius=-1)


@pytest.fixture(scope="module")
def report():
    spec = BenchmarkSpec(40, 3.0, ["dubins", "gmdm-prime:2"], seed=3)
    return run_montecarlo(spec)


def test_summary_matches_csv(report):
    rows = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert len(rows) == 80
    for m in report.models:
        vals = [float(r["travel_time"]) for r in rows if r["model"] == m]
        assert summarize(vals) == report.summary()[m]["travel_time"]
    # identical goals across models
    by_trial = {}
    for r in rows:
        by_trial.setdefault(r["trial"], set()).add((r["goal_x"], r["goal_y"], r["goal_theta"]))
    assert all(len(s) == 1 for s in by_trial.values())


def test_multispeed_not_slower(report):
    d, g = report.travel_times["dubins"], report.travel_times["gmdm-prime:2"]
    assert np.all(g <= d + 1e-9)


def test_single_trial_equals_solve():
    spec = BenchmarkSpec(1, 3.0, ["gmdm-prime:2"], seed=11)
    rep = run_montecarlo(spec)
    x, y, th = sample_goals(1, 3.0, 11)[0]
    cands = enumerate_candidates(VehicleLimits(0.3, 1, 1), 2, Variant.GMDM_PRIME)
    assert rep.travel_times["gmdm-prime:2"][0] == best_path(Pose(0, 0, 0), Pose(x, y, th), cands)[1]


def test_workers_match_serial(report):
    spec = BenchmarkSpec(40, 3.0, ["dubins", "gmdm-prime:2"], seed=3)
    par = run_montecarlo(spec, workers=2)
    for m in report.models:
        assert np.array_equal(par.travel_times[m], report.travel_times[m])
