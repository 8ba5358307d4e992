"""A* over a heading-discretized lattice with precomputed neighbour paths.

Every edge joins a lattice pose to one of its 8 neighbouring cells at any of
the discrete headings. Because the paths are translation-equivariant, the
candidate solutions for each (offset, heading in, heading out) triple are
solved once from the origin and shifted into place during search.
"""

from __future__ import annotations

import heapq
import itertools
import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..cost import (
    DEFAULT_DS_MAX, RiskParams, SampledPath, integrate_segments, risk_value, sample_path,
)
from ..environment import Environment
from ..kinematics import Pose, TWO_PI
from ..solver import PathSolution, solve_type
from .result import PlanResult

# templates evaluated per vectorized pass when costing an edge
EDGE_CHUNK = 8

NEIGHBORS_8 = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1))


@dataclass(frozen=True)
class GridSpec:
    cell_size: float = 1.0
    headings: int = 8
    connectivity: int = 8

    def __post_init__(self):
        if not self.cell_size > 0:
            raise ValueError("cell_size must be positive")
        if self.headings < 4:
            raise ValueError("need at least 4 headings")
        if self.connectivity != 8:
            raise ValueError("only 8-connectivity is supported")

    @property
    def offsets(self) -> tuple[tuple[int, int], ...]:
        return NEIGHBORS_8

    def heading(self, h: int) -> float:
        return h * TWO_PI / self.headings

    def heading_index(self, theta: float, tol: float = 1e-6) -> int:
        f = theta / (TWO_PI / self.headings)
        h = round(f)
        if abs(f - h) > tol:
            raise ValueError(f"heading {theta} is not on the {self.headings}-heading lattice")
        return h % self.headings


class LookupTable:
    """Obstacle-independent neighbour paths keyed by (offset, h_in, h_out).

    Each entry lists the feasible candidate solutions from the origin, sorted
    by travel time (stable, so ties keep enumeration order). Entries without a
    feasible candidate are empty.
    """

    def __init__(self, spec: GridSpec, entries: dict):
        self.spec = spec
        self.entries = entries
        self._samples: dict = {}

    def __len__(self):
        return len(self.entries)

    def get(self, offset, h_in: int, h_out: int) -> list[PathSolution]:
        return self.entries[(offset, h_in, h_out)]

    def origin_pose(self, h_in: int) -> Pose:
        return Pose(0.0, 0.0, self.spec.heading(h_in))

    def sampled(self, key, idx: int, ds_max: float) -> SampledPath:
        """Samples of template ``idx`` relative to the origin (cached)."""
        ck = (key, idx, ds_max)
        s = self._samples.get(ck)
        if s is None:
            s = sample_path(self.origin_pose(key[1]), self.entries[key][idx], ds_max)
            self._samples[ck] = s
        return s

    def batch(self, key, lo: int, hi: int, ds_max: float) -> "_Batch":
        """Templates ``lo:hi`` of one entry stacked for a single vectorized pass."""
        ck = (key, lo, hi, ds_max)
        b = self._samples.get(ck)
        if b is None:
            b = _Batch([self.sampled(key, i, ds_max) for i in range(lo, hi)])
            self._samples[ck] = b
        return b


class _Batch:
    def __init__(self, parts: list[SampledPath]):
        self.x = np.concatenate([p.x for p in parts])
        self.y = np.concatenate([p.y for p in parts])
        self.theta = np.concatenate([p.theta for p in parts])
        self.v = np.concatenate([p.v for p in parts])
        self.spans, self.segments = [], []
        off = 0
        for p in parts:
            self.spans.append((off, off + len(p)))
            self.segments.append([(a + off, b + off, t) for a, b, t in p.segments])
            off += len(p)


def build_lookup_table(spec: GridSpec, candidates) -> LookupTable:
    entries = {}
    for (di, dj) in spec.offsets:
        for h_in in range(spec.headings):
            p0 = Pose(0.0, 0.0, spec.heading(h_in))
            for h_out in range(spec.headings):
                pf = Pose(di * spec.cell_size, dj * spec.cell_size, spec.heading(h_out))
                sols = []
                for c in candidates:
                    s = solve_type(p0, pf, c.controls, c.path_type)
                    if s is not None:
                        sols.append(s)
                sols.sort(key=lambda s: s.total_time)
                entries[((di, dj), h_in, h_out)] = sols
    return LookupTable(spec, entries)


class GridPlanner:
    """Lattice search over (column, row, heading) states.

    Lattice points sit at cell centres of the environment bounds, or, without
    bounds, on a grid anchored at the start position.
    """

    def __init__(
        self,
        env: Environment,
        spec: GridSpec,
        table: LookupTable,
        params: RiskParams,
        ds_max: float = DEFAULT_DS_MAX,
        v_max: float = 1.0,
        origin: Optional[tuple[float, float]] = None,
        shape: Optional[tuple[int, int]] = None,
    ):
        self.env = env
        self.spec = spec
        self.table = table
        self.params = params
        self.ds_max = ds_max
        self.v_max = v_max
        b = env.bounds
        if origin is None:
            if b is None:
                raise ValueError("grid origin required when the environment has no bounds")
            origin = (b.xmin + spec.cell_size / 2, b.ymin + spec.cell_size / 2)
        if shape is None:
            if b is None:
                raise ValueError("grid shape required when the environment has no bounds")
            shape = (int(math.floor((b.xmax - b.xmin) / spec.cell_size + 1e-9)),
                     int(math.floor((b.ymax - b.ymin) / spec.cell_size + 1e-9)))
        self.origin = origin
        self.shape = shape
        self._edge_cache: dict = {}
        self.edges_evaluated = 0

    def position(self, i: int, j: int) -> tuple[float, float]:
        return (self.origin[0] + i * self.spec.cell_size, self.origin[1] + j * self.spec.cell_size)

    def pose(self, state) -> Pose:
        i, j, h = state
        x, y = self.position(i, j)
        return Pose(x, y, self.spec.heading(h))

    def snap(self, p: Pose, tol: float = 1e-6):
        """Lattice state of a pose that lies on the lattice."""
        fi = (p.x - self.origin[0]) / self.spec.cell_size
        fj = (p.y - self.origin[1]) / self.spec.cell_size
        i, j = round(fi), round(fj)
        if abs(fi - i) > tol or abs(fj - j) > tol:
            raise ValueError(f"pose {p} is not on the lattice")
        if not self.in_grid(i, j):
            raise ValueError(f"pose {p} is outside the grid")
        return (i, j, self.spec.heading_index(p.theta))

    def in_grid(self, i: int, j: int) -> bool:
        return 0 <= i < self.shape[0] and 0 <= j < self.shape[1]

    def states(self):
        for i in range(self.shape[0]):
            for j in range(self.shape[1]):
                x, y = self.position(i, j)
                if self.env.blocked(x, y):
                    continue
                for h in range(self.spec.headings):
                    yield (i, j, h)

    def edge(self, state, offset, h_out) -> tuple[float, Optional[PathSolution]]:
        """Cheapest collision-free table path for one edge (cached)."""
        key = (state, offset, h_out)
        hit = self._edge_cache.get(key)
        if hit is not None:
            return hit
        i, j, h_in = state
        x, y = self.position(i, j)
        tkey = (offset, h_in, h_out)
        templates = self.table.entries[tkey]
        best_cost, best_sol = math.inf, None
        use_risk = self.params.lam > 0
        for lo in range(0, len(templates), EDGE_CHUNK):
            if templates[lo].total_time >= best_cost:
                break
            hi = min(lo + EDGE_CHUNK, len(templates))
            b = self.table.batch(tkey, lo, hi, self.ds_max)
            xs, ys = b.x + x, b.y + y
            self.edges_evaluated += hi - lo
            hit = self.env.blocked(xs, ys)
            f = None
            if use_risk and len(xs):
                # ray-cast only samples of templates that stay collision free
                keep = np.ones(len(xs), dtype=bool)
                for a, z in b.spans:
                    if hit[a:z].any():
                        keep[a:z] = False
                f = np.ones(len(xs))
                if keep.any():
                    d_c = self.env.clearance(xs[keep], ys[keep], b.theta[keep])
                    f[keep] = np.asarray(risk_value(d_c / b.v[keep], self.params.t_star)).reshape(-1) ** self.params.lam
            for n, idx in enumerate(range(lo, hi)):
                tmpl = templates[idx]
                if tmpl.total_time >= best_cost:
                    break
                a, z = b.spans[n]
                if z > a and hit[a:z].any():
                    continue
                cost = integrate_segments(f, b.segments[n]) if f is not None and z > a else tmpl.total_time
                if cost < best_cost:
                    best_cost, best_sol = cost, tmpl
        result = (best_cost, best_sol)
        self._edge_cache[key] = result
        return result

    def successors(self, state):
        i, j, _ = state
        for offset in self.spec.offsets:
            ni, nj = i + offset[0], j + offset[1]
            if not self.in_grid(ni, nj):
                continue
            x, y = self.position(ni, nj)
            if self.env.blocked(x, y):
                continue
            for h_out in range(self.spec.headings):
                cost, sol = self.edge(state, offset, h_out)
                if sol is not None and math.isfinite(cost):
                    yield (ni, nj, h_out), cost, sol

    def heuristic(self, state, goal) -> float:
        (x0, y0), (x1, y1) = self.position(*state[:2]), self.position(*goal[:2])
        return math.hypot(x1 - x0, y1 - y0) / self.v_max

    def search(self, start, goal) -> Optional[tuple[float, list, list]]:
        """A* from lattice state ``start`` to ``goal``; returns (cost, states, edges)."""
        tick = time.perf_counter()
        counter = itertools.count()
        g = {start: 0.0}
        parent: dict = {start: None}
        heap = [(self.heuristic(start, goal), next(counter), start)]
        closed = set()
        expanded = 0
        while heap:
            _, _, s = heapq.heappop(heap)
            if s in closed:
                continue
            if s == goal:
                break
            closed.add(s)
            expanded += 1
            gs = g[s]
            for t, c, sol in self.successors(s):
                if t in closed:
                    continue
                ng = gs + c
                if ng < g.get(t, math.inf):
                    g[t] = ng
                    parent[t] = (s, sol)
                    heapq.heappush(heap, (ng + self.heuristic(t, goal), next(counter), t))
        self.last_expanded = expanded
        self.last_wall_time = time.perf_counter() - tick
        if goal not in g:
            return None
        states, edges = [goal], []
        cur = goal
        while parent[cur] is not None:
            prev, sol = parent[cur]
            edges.append(sol)
            states.append(prev)
            cur = prev
        return g[goal], states[::-1], edges[::-1]

    def plan(self, start: Pose, goal: Pose) -> Optional[PlanResult]:
        s, t = self.snap(start), self.snap(goal)
        found = self.search(s, t)
        if found is None:
            return None
        cost, states, edges = found
        waypoints = [self.pose(st) for st in states]
        translated = [
            sol.translated(p.x, p.y) for p, sol in zip(waypoints, edges)
        ]
        return PlanResult(
            waypoints, translated, cost, sum(e.total_time for e in edges),
            {"nodes_expanded": self.last_expanded, "wall_time": self.last_wall_time,
             "edges_evaluated": self.edges_evaluated},
        )


def plan_grid(
    env: Environment,
    spec: GridSpec,
    start: Pose,
    goal: Pose,
    params: RiskParams,
    candidates=None,
    table: Optional[LookupTable] = None,
    ds_max: float = DEFAULT_DS_MAX,
    v_max: Optional[float] = None,
) -> Optional[PlanResult]:
    """Time-risk optimal lattice plan from ``start`` to ``goal``.

    Both poses must lie on the lattice. The heuristic (straight-line distance
    over top speed) never exceeds the true cost since the risk factor is >= 1.
    """
    if table is None:
        if candidates is None:
            raise ValueError("need either a lookup table or a candidate set")
        table = build_lookup_table(spec, candidates)
    if v_max is None:
        v_max = _max_speed(table)
    origin = shape = None
    if env.bounds is None:
        # unbounded: anchor the lattice at the start, pad 3 cells around start/goal
        pad = 3
        ci = round((goal.x - start.x) / spec.cell_size)
        cj = round((goal.y - start.y) / spec.cell_size)
        i0, j0 = min(0, ci) - pad, min(0, cj) - pad
        origin = (start.x + i0 * spec.cell_size, start.y + j0 * spec.cell_size)
        shape = (abs(ci) + 2 * pad + 1, abs(cj) + 2 * pad + 1)
    planner = GridPlanner(env, spec, table, params, ds_max, v_max, origin, shape)
    t0 = time.perf_counter()
    result = planner.plan(start, goal)
    if result is not None:
        result.diagnostics["wall_time"] = time.perf_counter() - t0
    return result


def _max_speed(table: LookupTable) -> float:
    v = 0.0
    for sols in table.entries.values():
        for s in sols:
            v = max(v, max(u.v for u in s.controls))
    return v or 1.0
