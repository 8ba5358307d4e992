import itertools
import math
import random

import pytest

from gmdm.cost import RiskParams
from gmdm.environment import Circle, Environment
from gmdm.kinematics import Pose, TWO_PI, VehicleLimits
from gmdm.planners import Variant, best_path, enumerate_candidates, solve_tsp

LIM = VehicleLimits(0.3, 1.0, 1.0)
DUB = enumerate_candidates(LIM, 1)
START = Pose(0.0, 0.0, 0.0)


def brute_force(points, H, start, cands, env=None, params=None):
    hs = [h * TWO_PI / H for h in range(H)]
    cache = {}

    def c(a, b):
        if (a, b) not in cache:
            r = best_path(a, b, cands, env, params)
            cache[(a, b)] = math.inf if r is None else r[1]
        return cache[(a, b)]

    best = math.inf
    for perm in itertools.permutations(range(len(points))):
        for assign in itertools.product(range(H), repeat=len(points)):
            poses = [start] + [Pose(*points[i], hs[h]) for i, h in zip(perm, assign)] + [start]
            best = min(best, sum(c(a, b) for a, b in zip(poses, poses[1:])))
    return best


def test_pose_pair_count():
    res = solve_tsp([(2, 1), (3, -2), (-1, 2)], 4, START, DUB)
    # 3*4 start legs out, 12 back, and 12*8 between distinct points
    assert res.pose_pairs == 120


@pytest.mark.parametrize("seed,n,H", [(0, 3, 2), (1, 3, 4), (2, 4, 2)])
def test_matches_brute_force(seed, n, H):
    rng = random.Random(seed)
    pts = [(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(n)]
    res = solve_tsp(pts, H, START, DUB)
    assert res.total_time == pytest.approx(brute_force(pts, H, START, DUB), abs=1e-9)


def test_matches_brute_force_with_risk():
    env = Environment((Circle((1.5, 0.5), 0.4),))
    params = RiskParams(3.0, 1.0)
    pts = [(3.0, 0.0), (1.0, 2.5)]
    res = solve_tsp(pts, 2, START, DUB, env, params)
    assert res.plan.cost == pytest.approx(brute_force(pts, 2, START, DUB, env, params), rel=1e-12)


def test_single_point_out_and_back():
    res = solve_tsp([(2.0, 2.0)], 4, START, DUB)
    assert res.order == [0]
    assert len(res.plan.waypoints) == 3
    assert res.plan.waypoints[0] == res.plan.waypoints[-1] == START
    assert res.pose_pairs == 8


def test_plan_continuity_and_total():
    res = solve_tsp([(2, 1), (3, -2), (-1, 2)], 4, START, DUB)
    assert res.plan.max_joint_error() < 1e-9
    assert res.total_time == pytest.approx(sum(s.total_time for s in res.plan.solutions))
    assert sorted(res.order) == [0, 1, 2]


def test_multispeed_no_worse_than_dubins():
    rng = random.Random(5)
    g2 = enumerate_candidates(LIM, 2, Variant.GMDM_PRIME)
    for _ in range(3):
        pts = [(rng.uniform(-4, 4), rng.uniform(-4, 4)) for _ in range(4)]
        assert solve_tsp(pts, 4, START, g2).total_time <= solve_tsp(pts, 4, START, DUB).total_time + 1e-9


@pytest.mark.parametrize("pts,H", [([], 4), ([(i, 0) for i in range(9)], 4), ([(1, 1)], 0)])
def test_bad_inputs(pts, H):
    with pytest.raises(ValueError):
        solve_tsp(pts, H, START, DUB)
