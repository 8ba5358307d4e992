import math

import pytest

from gmdm.cost import RiskParams
from gmdm.environment import Bounds, Circle, Environment, box
from gmdm.kinematics import Pose
from gmdm.planners import (
    GridPlanner, GridSpec, Variant, build_lookup_table, enumerate_candidates, plan_grid,
)
from gmdm.solver import solve_type
from gridutil import bellman_ford, direct_edges

PI = math.pi


@pytest.fixture(scope="module")
def cands():
    from gmdm.kinematics import VehicleLimits
    return enumerate_candidates(VehicleLimits(0.3, 1.0, 1.0), 1, Variant.GMDM_PRIME)


@pytest.fixture(scope="module")
def table(cands):
    return build_lookup_table(GridSpec(), cands)


def test_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(cell_size=0)
    with pytest.raises(ValueError):
        GridSpec(headings=3)
    with pytest.raises(ValueError):
        GridSpec(connectivity=4)
    s = GridSpec()
    assert s.heading(2) == pytest.approx(PI / 2)
    assert s.heading_index(7 * PI / 4) == 7
    with pytest.raises(ValueError):
        s.heading_index(0.3)


def test_table_shape(table):
    assert len(table) == 8 * 8 * 8
    for sols in table.entries.values():
        times = [s.total_time for s in sols]
        assert times == sorted(times)


def test_table_translation(table):
    key = ((1, 1), 2, 5)
    spec = table.spec
    for dx, dy in ((0, 0), (3.5, -2.5), (10.5, 7.5)):
        p0 = Pose(dx, dy, spec.heading(2))
        pf = Pose(dx + 1, dy + 1, spec.heading(5))
        for tmpl in table.get(*key):
            direct = solve_type(p0, pf, tmpl.controls, tmpl.path_type)
            assert direct.total_time == pytest.approx(tmpl.total_time, abs=1e-9)
            assert tmpl.translated(dx, dy).end_pose(p0).close_to(pf, 1e-9, 1e-9)


def test_start_equals_goal(table):
    env = Environment((), Bounds(0, 0, 3, 3))
    res = plan_grid(env, GridSpec(), Pose(1.5, 1.5, 0), Pose(1.5, 1.5, 0), RiskParams(), table=table)
    assert res.cost == 0.0 and res.solutions == []


def test_off_lattice(table):
    env = Environment((), Bounds(0, 0, 3, 3))
    with pytest.raises(ValueError):
        plan_grid(env, GridSpec(), Pose(1.2, 1.5, 0), Pose(2.5, 2.5, 0), RiskParams(), table=table)
    with pytest.raises(ValueError):
        plan_grid(env, GridSpec(), Pose(1.5, 1.5, 0.1), Pose(2.5, 2.5, 0), RiskParams(), table=table)


def test_matches_brute_force(cands, table):
    env = Environment((Circle((1.5, 1.5), 0.3),), Bounds(0, 0, 3, 3))
    params = RiskParams(3.0, 2.0)
    planner = GridPlanner(env, GridSpec(), table, params, 0.05, 1.0)
    start, goal = (0, 0, 0), (2, 2, 2)
    states, edges = direct_edges(planner, cands, params, 0.05)
    dist = bellman_ford(states, edges, start)
    found = planner.search(start, goal)
    assert found[0] == pytest.approx(dist[goal], rel=1e-9, abs=1e-9)
    # every edge the planner costs agrees with a direct solve
    for (a, b), c in edges.items():
        off = (b[0] - a[0], b[1] - a[1])
        ec, _ = planner.edge(a, off, b[2])
        assert ec == pytest.approx(c, rel=1e-9, abs=1e-9)


def test_plan_continuity_and_determinism(table):
    env = Environment((box(2, 0, 3, 2),), Bounds(0, 0, 5, 4))
    args = (env, GridSpec(), Pose(0.5, 0.5, 0), Pose(4.5, 0.5, 3 * PI / 2), RiskParams())
    a = plan_grid(*args, table=table)
    b = plan_grid(*args, table=table)
    assert a.max_joint_error() < 1e-9
    assert a.waypoints[0].close_to(args[2]) and a.waypoints[-1].close_to(args[3])
    assert a.cost == b.cost and [s.to_dict() for s in a.solutions] == [s.to_dict() for s in b.solutions]
    assert a.diagnostics["nodes_expanded"] > 0
    assert a.total_time == pytest.approx(sum(s.total_time for s in a.solutions))


def test_unbounded_env(table):
    res = plan_grid(Environment(), GridSpec(), Pose(0, 0, 0), Pose(3, 2, PI / 2), RiskParams(3, 0), table=table)
    assert res is not None and res.max_joint_error() < 1e-9


def test_walled_off_goal(table):
    env = Environment((box(1.8, 0, 2.2, 4),), Bounds(0, 0, 4, 4))
    assert plan_grid(env, GridSpec(), Pose(0.5, 0.5, 0), Pose(3.5, 0.5, 0), RiskParams(), table=table) is None


def test_needs_table_or_candidates():
    with pytest.raises(ValueError):
        plan_grid(Environment(), GridSpec(), Pose(0, 0, 0), Pose(1, 0, 0), RiskParams())
