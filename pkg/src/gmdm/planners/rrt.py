"""RRT* whose edges are full best-candidate connections between sampled poses."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..cost import DEFAULT_DS_MAX, RiskParams
from ..environment import Bounds, Environment
from ..kinematics import Pose, TWO_PI
from ..solver import PathSolution
from .candidates import best_path
from .result import PlanResult


@dataclass
class RRTConfig:
    max_nodes: Optional[int] = 500
    max_seconds: Optional[float] = None
    goal_bias: float = 0.05
    radius: float = 2.5
    ds_max: float = DEFAULT_DS_MAX
    # iteration cap relative to max_nodes, so rejected samples cannot loop forever
    max_iter_factor: int = 20


@dataclass(eq=False)
class _Node:
    pose: Pose
    cost: float
    parent: Optional["_Node"] = None
    edge: Optional[PathSolution] = None
    edge_cost: float = 0.0
    children: list = field(default_factory=list)


def _reparent(node: _Node, parent: _Node, sol: PathSolution, edge_cost: float) -> None:
    if node.parent is not None:
        node.parent.children.remove(node)
    node.parent, node.edge, node.edge_cost = parent, sol, edge_cost
    parent.children.append(node)
    # push the new cost-to-come down the subtree
    stack = [node]
    while stack:
        n = stack.pop()
        n.cost = n.parent.cost + n.edge_cost
        stack.extend(n.children)


def plan_rrt_star(
    env: Environment,
    candidates,
    start: Pose,
    goal: Pose,
    config: Optional[RRTConfig] = None,
    seed: int = 0,
    params: Optional[RiskParams] = None,
    sample_bounds: Optional[Bounds] = None,
) -> Optional[PlanResult]:
    """Anytime RRT* from ``start`` to the exact ``goal`` pose.

    Samples are uniform over the bounds (or ``sample_bounds``) with uniform
    heading, replaced by the goal with probability ``goal_bias``. Each new
    node is wired to the cheapest parent within ``radius`` (the nearest node
    if none is that close), then nearby nodes are rewired through it. The
    reported best cost never increases. Runs are reproducible for a fixed
    seed and node budget.
    """
    cfg = config or RRTConfig()
    if cfg.max_nodes is None and cfg.max_seconds is None:
        raise ValueError("need a node or time budget")
    region = sample_bounds or env.bounds
    if region is None:
        pad = 5.0
        region = Bounds(min(start.x, goal.x) - pad, min(start.y, goal.y) - pad,
                        max(start.x, goal.x) + pad, max(start.y, goal.y) + pad)
    rng = np.random.Generator(np.random.PCG64(seed))
    tick = time.perf_counter()

    def connect(a: Pose, b: Pose):
        return best_path(a, b, candidates, env, params, cfg.ds_max)

    root = _Node(start, 0.0)
    nodes = [root]
    xy = [(start.x, start.y)]
    goal_node: Optional[_Node] = None
    history: list[tuple[int, float]] = []
    edge_calls = 0

    def near(p: Pose) -> list[_Node]:
        arr = np.asarray(xy)
        d = np.hypot(arr[:, 0] - p.x, arr[:, 1] - p.y)
        idx = np.flatnonzero(d <= cfg.radius)
        if idx.size == 0:
            idx = [int(np.argmin(d))]
        return [nodes[i] for i in idx]

    def try_goal(candidates_nodes) -> None:
        nonlocal goal_node, edge_calls
        for n in candidates_nodes:
            edge_calls += 1
            res = connect(n.pose, goal)
            if res is None:
                continue
            sol, c = res
            if goal_node is None:
                goal_node = _Node(goal, n.cost + c, n, sol, c)
                n.children.append(goal_node)
            elif n.cost + c < goal_node.cost:
                _reparent(goal_node, n, sol, c)

    max_iter = (cfg.max_nodes or 10**9) * cfg.max_iter_factor
    it = 0
    while True:
        if cfg.max_nodes is not None and len(nodes) >= cfg.max_nodes:
            break
        if cfg.max_seconds is not None and time.perf_counter() - tick >= cfg.max_seconds:
            break
        if it >= max_iter:
            break
        it += 1
        if rng.random() < cfg.goal_bias:
            try_goal(near(goal))
            history.append((it, goal_node.cost if goal_node else math.inf))
            continue
        x = rng.uniform(region.xmin, region.xmax)
        y = rng.uniform(region.ymin, region.ymax)
        th = rng.uniform(0.0, TWO_PI)
        if env.blocked(x, y):
            history.append((it, goal_node.cost if goal_node else math.inf))
            continue
        q = Pose(x, y, th)
        neighbours = near(q)
        best = None
        for n in neighbours:
            edge_calls += 1
            res = connect(n.pose, q)
            if res is not None and (best is None or n.cost + res[1] < best[0]):
                best = (n.cost + res[1], n, res[0], res[1])
        if best is None:
            history.append((it, goal_node.cost if goal_node else math.inf))
            continue
        new = _Node(q, best[0], best[1], best[2], best[3])
        best[1].children.append(new)
        nodes.append(new)
        xy.append((x, y))
        for n in neighbours:
            if n is best[1] or n is root:
                continue
            edge_calls += 1
            res = connect(q, n.pose)
            if res is not None and new.cost + res[1] < n.cost:
                _reparent(n, new, res[0], res[1])
        if math.hypot(goal.x - x, goal.y - y) <= cfg.radius:
            try_goal([new])
        history.append((it, goal_node.cost if goal_node else math.inf))

    wall = time.perf_counter() - tick
    if goal_node is None:
        return None
    chain = []
    n = goal_node
    while n is not None:
        chain.append(n)
        n = n.parent
    chain.reverse()
    sols = [c.edge for c in chain[1:]]
    return PlanResult(
        [c.pose for c in chain], sols, goal_node.cost, sum(s.total_time for s in sols),
        {"tree_size": len(nodes), "iterations": it, "edge_solves": edge_calls,
         "wall_time": wall, "best_cost_history": history},
    )
