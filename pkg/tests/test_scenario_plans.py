"""Ordering checks on the bundled scenarios. Absolute numbers are not asserted."""

import numpy as np
import pytest

from gmdm.cost import RiskParams, path_cost, risk_profile, sample_path
from gmdm.planners import GridSpec, Variant, enumerate_candidates, plan_grid
from gmdm.scenario import load_scenario


def rescore(sc, plan, params):
    return sum(path_cost(sc.env, sample_path(p, s), params)
               for p, s in zip(plan.waypoints, plan.solutions))


def max_risk(sc, plan):
    return max(float(np.max(risk_profile(sc.env, sample_path(p, s), sc.risk)))
               for p, s in zip(plan.waypoints, plan.solutions))


def test_corridor_risk_weight(scenario_dir):
    sc = load_scenario(scenario_dir / "corridor.json")
    cands = enumerate_candidates(sc.limits, 2, Variant.GMDM_PRIME)
    risky = RiskParams(sc.risk.t_star, 2.0)
    fast = plan_grid(sc.env, GridSpec(), sc.start, sc.goal, RiskParams(sc.risk.t_star, 0.0), cands)
    safe = plan_grid(sc.env, GridSpec(), sc.start, sc.goal, risky, cands)
    assert safe.max_joint_error() < 1e-9
    assert rescore(sc, safe, risky) <= rescore(sc, fast, risky) + 1e-9
    assert fast.total_time <= safe.total_time + 1e-9


def test_maze_more_speeds_lower_peak_risk(scenario_dir):
    sc = load_scenario(scenario_dir / "maze.json")
    peaks = {}
    for k in (1, 3):
        plan = plan_grid(sc.env, GridSpec(), sc.start, sc.goal, sc.risk,
                         enumerate_candidates(sc.limits, k, Variant.GMDM))
        assert plan is not None
        peaks[k] = max_risk(sc, plan)
    assert peaks[3] < peaks[1]
