"""Exhaustive shortest paths over a lattice, with every edge solved directly."""

import math

from gmdm.kinematics import Pose
from gmdm.planners import best_path


def direct_edges(planner, candidates, params, ds_max):
    """{(state, next_state): cost} from a fresh best_path call per edge."""
    edges = {}
    states = list(planner.states())
    alive = set(states)
    for s in states:
        p0 = planner.pose(s)
        for off in planner.spec.offsets:
            for h in range(planner.spec.headings):
                t = (s[0] + off[0], s[1] + off[1], h)
                if t not in alive:
                    continue
                res = best_path(p0, planner.pose(t), candidates, planner.env, params, ds_max)
                if res is not None:
                    edges[(s, t)] = res[1]
    return states, edges


def bellman_ford(states, edges, source):
    dist = {s: math.inf for s in states}
    dist[source] = 0.0
    for _ in range(len(states)):
        changed = False
        for (a, b), c in edges.items():
            if dist[a] + c < dist[b]:
                dist[b] = dist[a] + c
                changed = True
        if not changed:
            break
    return dist
