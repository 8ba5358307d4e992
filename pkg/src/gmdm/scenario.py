"""JSON scenario files.

Example::

    {
      "vehicle": {"v_min": 0.3, "v_max": 1.0, "omega_max": 1.0},
      "risk": {"t_star": 3.0, "lambda": 2.0},
      "bounds": {"xmin": 0, "ymin": 0, "xmax": 10, "ymax": 6},
      "obstacles": [
        {"type": "circle", "center": [4, 3], "radius": 1.0},
        {"type": "polygon", "vertices": [[6, 0], [7, 0], [7, 2], [6, 2]]}
      ],
      "start": [0.5, 0.5, 0.0],
      "goal": [9.5, 5.5, 1.5707963267948966],
      "points": [[2, 1], [3, -2]],
      "headings": 4
    }

Every key is optional. Lengths are metres, angles radians, speeds m/s.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .cost import RiskParams
from .environment import Bounds, Circle, ConvexPolygon, Environment
from .kinematics import Pose, VehicleLimits

DEFAULT_LIMITS = VehicleLimits(0.3, 1.0, 1.0)


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    limits: VehicleLimits = DEFAULT_LIMITS
    risk: RiskParams = field(default_factory=RiskParams)
    env: Environment = field(default_factory=Environment)
    start: Optional[Pose] = None
    goal: Optional[Pose] = None
    points: list = field(default_factory=list)
    headings: int = 4


def _pose(v, name) -> Pose:
    if not isinstance(v, (list, tuple)) or len(v) != 3:
        raise ScenarioError(f"{name} must be [x, y, theta]")
    return Pose(*(float(a) for a in v))


def _obstacle(d):
    kind = d.get("type")
    if kind == "circle":
        return Circle(tuple(d["center"]), float(d["radius"]))
    if kind == "polygon":
        return ConvexPolygon(tuple(tuple(p) for p in d["vertices"]))
    raise ScenarioError(f"unknown obstacle type {kind!r}")


def scenario_from_dict(data: dict) -> Scenario:
    try:
        veh = data.get("vehicle", {})
        limits = VehicleLimits(
            float(veh.get("v_min", DEFAULT_LIMITS.v_min)),
            float(veh.get("v_max", DEFAULT_LIMITS.v_max)),
            float(veh.get("omega_max", DEFAULT_LIMITS.omega_max)),
        )
        rk = data.get("risk", {})
        risk = RiskParams(float(rk.get("t_star", 3.0)), float(rk.get("lambda", 2.0)))
        b = data.get("bounds")
        bounds = None if b is None else Bounds(
            float(b["xmin"]), float(b["ymin"]), float(b["xmax"]), float(b["ymax"]))
        obstacles = [_obstacle(o) for o in data.get("obstacles", [])]
        return Scenario(
            limits=limits,
            risk=risk,
            env=Environment(tuple(obstacles), bounds),
            start=_pose(data["start"], "start") if "start" in data else None,
            goal=_pose(data["goal"], "goal") if "goal" in data else None,
            points=[(float(p[0]), float(p[1])) for p in data.get("points", [])],
            headings=int(data.get("headings", 4)),
        )
    except ScenarioError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ScenarioError(f"invalid scenario: {e}") from e


def load_scenario(path) -> Scenario:
    with open(Path(path)) as fh:
        return scenario_from_dict(json.load(fh))


def scenario_to_dict(sc: Scenario) -> dict:
    out = {
        "vehicle": {"v_min": sc.limits.v_min, "v_max": sc.limits.v_max,
                    "omega_max": sc.limits.omega_max},
        "risk": {"t_star": sc.risk.t_star, "lambda": sc.risk.lam},
        "obstacles": [o.to_dict() for o in sc.env.obstacles],
        "headings": sc.headings,
    }
    b = sc.env.bounds
    if b is not None:
        out["bounds"] = {"xmin": b.xmin, "ymin": b.ymin, "xmax": b.xmax, "ymax": b.ymax}
    if sc.start is not None:
        out["start"] = list(sc.start.as_tuple())
    if sc.goal is not None:
        out["goal"] = list(sc.goal.as_tuple())
    if sc.points:
        out["points"] = [list(p) for p in sc.points]
    return out
