"""Discrete speed sets, candidate path families and best-path selection."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Optional

from ..cost import RiskParams, collides, path_cost, sample_path, DEFAULT_DS_MAX
from ..environment import Environment
from ..kinematics import ControlInput, Pose, VehicleLimits
from ..solver import ALL_TYPES, PathSolution, PathType, solve_type


class Variant(enum.Enum):
    GMDM = "gmdm"
    # straight segments pinned to v_max
    GMDM_PRIME = "gmdm-prime"


def speed_set(limits: VehicleLimits, k: int) -> list[float]:
    """``k`` uniformly spaced speeds in [v_min, v_max]; ``k == 1`` gives {v_max}."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if k == 1:
        return [limits.v_max]
    step = (limits.v_max - limits.v_min) / (k - 1)
    speeds = [limits.v_min + i * step for i in range(k)]
    speeds[-1] = limits.v_max
    return speeds


@dataclass(frozen=True)
class Candidate:
    path_type: PathType
    controls: tuple[ControlInput, ControlInput, ControlInput]

    def label(self) -> str:
        return "".join(f"{ch}{u.v:g}" for ch, u in zip(self.path_type.value, self.controls))


@dataclass(frozen=True)
class CandidateSet:
    variant: Variant
    k: int
    entries: tuple[Candidate, ...]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def name(self) -> str:
        # same spelling the benchmark accepts on the command line
        return "dubins" if self.k == 1 else f"{self.variant.value}:{self.k}"


def enumerate_candidates(
    limits: VehicleLimits, k: int, variant: Variant = Variant.GMDM,
) -> CandidateSet:
    """All (word, speeds) combinations: 6k^3 for GMDM, 2k^3 + 4k^2 for GMDM-prime.

    Ordered by word (LSL, RSR, LSR, RSL, LRL, RLR) and then lexicographically
    by segment speeds.
    """
    variant = Variant(variant)
    speeds = speed_set(limits, k)
    w = limits.omega_max
    entries = []
    for pt in ALL_TYPES:
        mid = speeds if (pt.is_ccc or variant is Variant.GMDM) else [limits.v_max]
        for v1, v2, v3 in itertools.product(speeds, mid, speeds):
            s1, s2, s3 = pt.turn_signs
            entries.append(Candidate(pt, (
                ControlInput(v1, s1 * w), ControlInput(v2, s2 * w), ControlInput(v3, s3 * w),
            )))
    return CandidateSet(variant, k, tuple(entries))


def dubins_candidates(limits: VehicleLimits) -> CandidateSet:
    return enumerate_candidates(limits, 1, Variant.GMDM)


def best_path(
    p0: Pose,
    pf: Pose,
    candidates,
    env: Optional[Environment] = None,
    params: Optional[RiskParams] = None,
    ds_max: float = DEFAULT_DS_MAX,
) -> Optional[tuple[PathSolution, float]]:
    """Cheapest feasible candidate path from ``p0`` to ``pf``.

    Cost is travel time without an environment or with zero risk weight, and
    the time-risk functional otherwise. Colliding paths are discarded. Ties go
    to the earlier candidate.
    """
    use_risk = env is not None and params is not None and params.lam > 0
    best: Optional[tuple[PathSolution, float]] = None
    if env is None:
        for c in candidates:
            sol = solve_type(p0, pf, c.controls, c.path_type)
            if sol is not None and (best is None or sol.total_time < best[1]):
                best = (sol, sol.total_time)
        return best

    # risk factor >= 1, so travel time lower-bounds the cost
    sols = []
    for c in candidates:
        sol = solve_type(p0, pf, c.controls, c.path_type)
        if sol is not None:
            sols.append(sol)
    sols.sort(key=lambda s: s.total_time)
    for sol in sols:
        if best is not None and sol.total_time >= best[1]:
            break
        sampled = sample_path(p0, sol, ds_max)
        if collides(env, sampled):
            continue
        cost = path_cost(env, sampled, params) if use_risk else sol.total_time
        if math.isfinite(cost) and (best is None or cost < best[1]):
            best = (sol, cost)
    return best
