from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..cost import DEFAULT_DS_MAX, sample_path
from ..kinematics import Pose, angle_diff
from ..solver import PathSolution


@dataclass
class PlanResult:
    """A chain of paths through ``waypoints``; ``solutions[i]`` joins
    ``waypoints[i]`` to ``waypoints[i + 1]``."""

    waypoints: list[Pose]
    solutions: list[PathSolution]
    cost: float
    total_time: float
    diagnostics: dict = field(default_factory=dict)

    def max_joint_error(self) -> float:
        """Largest position/heading mismatch between an edge's replayed end
        and the next waypoint."""
        err = 0.0
        for p, sol, q in zip(self.waypoints, self.solutions, self.waypoints[1:]):
            e = sol.end_pose(p)
            err = max(err, abs(e.x - q.x), abs(e.y - q.y), abs(angle_diff(e.theta, q.theta)))
        return err

    def polyline(self, ds_max: float = DEFAULT_DS_MAX) -> list[tuple[float, float, float, float]]:
        """(x, y, theta, v) samples along the whole plan."""
        rows = []
        for p, sol in zip(self.waypoints, self.solutions):
            s = sample_path(p, sol, ds_max)
            rows.extend(zip(s.x.tolist(), s.y.tolist(), s.theta.tolist(), s.v.tolist()))
        return rows

    def polyline_csv(self, ds_max: float = DEFAULT_DS_MAX) -> str:
        lines = ["x,y,theta,v"]
        lines += [f"{x:.6f},{y:.6f},{t:.6f},{v:.6f}" for x, y, t, v in self.polyline(ds_max)]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "waypoints": [list(p.as_tuple()) for p in self.waypoints],
            "edges": [s.to_dict() for s in self.solutions],
            "cost": self.cost,
            "total_time": self.total_time,
            "diagnostics": self.diagnostics,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)
