"""Exact small-n Dubins-style TSP over discretized headings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from ..cost import DEFAULT_DS_MAX, RiskParams
from ..environment import Environment
from ..kinematics import Pose, TWO_PI
from .candidates import best_path
from .result import PlanResult

MAX_POINTS = 8


@dataclass
class TspResult:
    order: list[int]
    headings: list[float]
    plan: PlanResult
    pose_pairs: int

    @property
    def total_time(self) -> float:
        return self.plan.total_time

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "headings": self.headings,
            "pose_pairs": self.pose_pairs,
            "total_time": self.plan.total_time,
            "cost": self.plan.cost,
            "plan": self.plan.to_dict(),
        }


def pair_costs(
    start: Pose, poses: list[list[Pose]], candidates,
    env: Optional[Environment] = None, params: Optional[RiskParams] = None,
    ds_max: float = DEFAULT_DS_MAX,
):
    """Best paths between every pose pair the tour can use.

    Keys are ``(i, h)`` for point ``i`` at heading index ``h`` and ``"start"``
    for the start pose. Pairs within the same point are skipped.
    """
    keys = [(i, h) for i in range(len(poses)) for h in range(len(poses[i]))]
    table = {}

    def put(a, pa, b, pb):
        table[(a, b)] = best_path(pa, pb, candidates, env, params, ds_max)

    for a in keys:
        pa = poses[a[0]][a[1]]
        put("start", start, a, pa)
        put(a, pa, "start", start)
        for b in keys:
            if a[0] != b[0]:
                put(a, pa, b, poses[b[0]][b[1]])
    return table


def solve_tsp(
    points: Sequence[Sequence[float]],
    headings_per_point: int,
    start: Pose,
    candidates,
    env: Optional[Environment] = None,
    params: Optional[RiskParams] = None,
    ds_max: float = DEFAULT_DS_MAX,
) -> Optional[TspResult]:
    """Cheapest closed tour from ``start`` through every point and back.

    Each point may be crossed at any of ``headings_per_point`` evenly spaced
    headings. The search is exact (dynamic programming over visited subsets),
    equivalent to enumerating every visiting order and heading assignment.
    """
    n = len(points)
    if n == 0:
        raise ValueError("need at least one point")
    if n > MAX_POINTS:
        raise ValueError(f"exact TSP limited to {MAX_POINTS} points")
    if headings_per_point < 1:
        raise ValueError("need at least one heading per point")
    hs = [h * TWO_PI / headings_per_point for h in range(headings_per_point)]
    poses = [[Pose(float(px), float(py), th) for th in hs] for px, py in points]
    table = pair_costs(start, poses, candidates, env, params, ds_max)

    def cost(a, b):
        r = table[(a, b)]
        return math.inf if r is None else r[1]

    H = headings_per_point
    # dp[(mask, i, h)] = cheapest cost from start covering mask, ending at (i, h)
    dp: dict = {}
    back: dict = {}
    for i in range(n):
        for h in range(H):
            dp[(1 << i, i, h)] = cost("start", (i, h))
            back[(1 << i, i, h)] = None
    for mask in range(1, 1 << n):
        for i in range(n):
            if not mask >> i & 1:
                continue
            for h in range(H):
                cur = dp.get((mask, i, h), math.inf)
                if not math.isfinite(cur):
                    continue
                for j in range(n):
                    if mask >> j & 1:
                        continue
                    nm = mask | (1 << j)
                    for g in range(H):
                        c = cur + cost((i, h), (j, g))
                        if c < dp.get((nm, j, g), math.inf):
                            dp[(nm, j, g)] = c
                            back[(nm, j, g)] = (mask, i, h)
    full = (1 << n) - 1
    best, end = math.inf, None
    for i in range(n):
        for h in range(H):
            c = dp.get((full, i, h), math.inf) + cost((i, h), "start")
            if c < best:
                best, end = c, (full, i, h)
    if end is None:
        return None
    seq = []
    k = end
    while k is not None:
        seq.append((k[1], k[2]))
        k = back[k]
    seq.reverse()

    keys = ["start"] + seq + ["start"]
    waypoints, sols = [], []
    for a, b in zip(keys, keys[1:]):
        waypoints.append(start if a == "start" else poses[a[0]][a[1]])
        sols.append(table[(a, b)][0])
    waypoints.append(start)
    plan = PlanResult(
        waypoints, sols, best, sum(s.total_time for s in sols),
        {"pose_pairs": len(table)},
    )
    return TspResult([i for i, _ in seq], [hs[h] for _, h in seq], plan, len(table))
