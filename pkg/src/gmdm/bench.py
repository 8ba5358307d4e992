"""Seeded Monte Carlo comparison of candidate sets on random goal poses."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .kinematics import Pose, VehicleLimits
from .planners.candidates import Variant, best_path, enumerate_candidates


@dataclass(frozen=True)
class ModelSpec:
    variant: Variant
    k: int

    @classmethod
    def parse(cls, text: str) -> "ModelSpec":
        """``dubins``, ``gmdm:<k>`` or ``gmdm-prime:<k>``."""
        text = text.strip().lower()
        if text == "dubins":
            return cls(Variant.GMDM, 1)
        name, _, k = text.partition(":")
        if not k:
            raise ValueError(f"model {text!r} needs a speed count, e.g. gmdm-prime:2")
        return cls(Variant(name), int(k))

    @property
    def name(self) -> str:
        # both variants collapse to the classic word set at one speed
        return "dubins" if self.k == 1 else f"{self.variant.value}:{self.k}"


@dataclass
class BenchmarkSpec:
    trials: int = 5000
    radius: float = 3.0
    models: list = field(default_factory=lambda: [
        ModelSpec(Variant.GMDM_PRIME, k) for k in (1, 2, 3, 4)])
    seed: int = 0
    vehicle: VehicleLimits = VehicleLimits(0.3, 1.0, 1.0)
    start: Pose = Pose(0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.trials <= 0:
            raise ValueError("trials must be positive")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        self.models = [m if isinstance(m, ModelSpec) else ModelSpec.parse(m) for m in self.models]


def sample_goals(n: int, radius: float, seed: int) -> np.ndarray:
    """``n`` goals (x, y, theta): uniform over the disk, uniform heading in [0, 2pi)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random((n, 3))
    r = radius * np.sqrt(u[:, 0])
    a = 2 * math.pi * u[:, 1]
    return np.column_stack([r * np.cos(a), r * np.sin(a), 2 * math.pi * u[:, 2]])


def summarize(values) -> dict:
    v = np.asarray(values, dtype=float)
    q1, med, q3 = np.percentile(v, [25, 50, 75])
    return {"median": float(med), "q1": float(q1), "q3": float(q3),
            "min": float(v.min()), "max": float(v.max()), "mean": float(v.mean())}


@dataclass
class BenchmarkReport:
    models: list[str]
    goals: np.ndarray
    travel_times: dict
    solve_times: dict

    def summary(self) -> dict:
        return {
            m: {"travel_time": summarize(self.travel_times[m]),
                "solve_time": summarize(self.solve_times[m])}
            for m in self.models
        }

    def to_json(self) -> str:
        return json.dumps({"trials": len(self.goals), "summary": self.summary()}, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trial", "model", "goal_x", "goal_y", "goal_theta", "travel_time", "solve_time"])
        for m in self.models:
            for i, g in enumerate(self.goals):
                w.writerow([i, m, repr(float(g[0])), repr(float(g[1])), repr(float(g[2])),
                            repr(float(self.travel_times[m][i])),
                            repr(float(self.solve_times[m][i]))])
        return buf.getvalue()


def _run_chunk(args):
    limits, model, start, goals = args
    cands = enumerate_candidates(limits, model.k, model.variant)
    times, walls = [], []
    for x, y, th in goals:
        pf = Pose(float(x), float(y), float(th))
        t0 = time.perf_counter()
        res = best_path(start, pf, cands)
        walls.append(time.perf_counter() - t0)
        times.append(res[1] if res is not None else math.inf)
    return times, walls


def run_montecarlo(spec: BenchmarkSpec, workers: int = 1) -> BenchmarkReport:
    """Solve every goal with every model. All models see the same goals."""
    goals = sample_goals(spec.trials, spec.radius, spec.seed)
    names = [m.name for m in spec.models]
    travel, wall = {}, {}
    if workers <= 1:
        for m in spec.models:
            t, w = _run_chunk((spec.vehicle, m, spec.start, goals))
            travel[m.name], wall[m.name] = np.array(t), np.array(w)
    else:
        chunks = np.array_split(goals, workers)
        with ProcessPoolExecutor(workers) as pool:
            for m in spec.models:
                parts = list(pool.map(_run_chunk, [(spec.vehicle, m, spec.start, c) for c in chunks]))
                travel[m.name] = np.concatenate([p[0] for p in parts])
                wall[m.name] = np.concatenate([p[1] for p in parts])
    return BenchmarkReport(names, goals, travel, wall)
