"""Multi-speed Dubins paths: closed-form solvers, reachability, time-risk cost
and planners built on them."""

from .kinematics import ControlInput, Pose, VehicleLimits, apply_primitive, signed_mod
from .solver import PathSolution, PathType, forward, solve_type

__version__ = "0.1.0"

__all__ = [
    "ControlInput", "Pose", "VehicleLimits", "apply_primitive", "signed_mod",
    "PathSolution", "PathType", "forward", "solve_type",
]
