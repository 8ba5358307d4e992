from .candidates import (
    Candidate,
    CandidateSet,
    Variant,
    best_path,
    dubins_candidates,
    enumerate_candidates,
    speed_set,
)
from .grid import GridPlanner, GridSpec, LookupTable, build_lookup_table, plan_grid
from .result import PlanResult
from .rrt import RRTConfig, plan_rrt_star
from .tsp import TspResult, solve_tsp

__all__ = [
    "Candidate", "CandidateSet", "Variant", "best_path", "dubins_candidates",
    "enumerate_candidates", "speed_set", "GridPlanner", "GridSpec", "LookupTable",
    "build_lookup_table", "plan_grid", "PlanResult", "RRTConfig", "plan_rrt_star",
    "TspResult", "solve_tsp",
]
