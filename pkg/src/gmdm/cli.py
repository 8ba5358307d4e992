"""Command line front end: solve, reach, montecarlo, plan, tsp.

Exit codes: 0 success, 1 usage or I/O error, 2 no solution.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .bench import BenchmarkSpec, ModelSpec, run_montecarlo
from .cost import DEFAULT_DS_MAX, RiskParams, path_cost, sample_path
from .kinematics import ControlInput, Pose, VehicleLimits
from .planners.candidates import CandidateSet, Variant, best_path, enumerate_candidates
from .planners.grid import GridSpec, plan_grid
from .planners.rrt import RRTConfig, plan_rrt_star
from .planners.tsp import solve_tsp
from .reachability import sample_reach_slice, word_predicate
from .scenario import Scenario, ScenarioError, load_scenario
from .solver import PathType

log = logging.getLogger("gmdm")

EXIT_OK, EXIT_ERROR, EXIT_NO_SOLUTION = 0, 1, 2


class UsageError(Exception):
    pass


def parse_pose(text: str) -> Pose:
    try:
        x, y, th = (float(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"pose must be 'x,y,theta', got {text!r}") from None
    return Pose(x, y, th)


def parse_floats(text: str, n: int, what: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        vals = []
    if len(vals) != n:
        raise UsageError(f"{what} needs {n} comma-separated numbers, got {text!r}")
    return vals


def _scenario(args) -> Scenario:
    sc = load_scenario(args.scenario) if getattr(args, "scenario", None) else Scenario()
    lam = sc.risk.lam if args.lam is None else args.lam
    t_star = sc.risk.t_star if args.t_star is None else args.t_star
    sc.risk = RiskParams(t_star, lam)
    return sc


def _candidates(args, limits: VehicleLimits) -> CandidateSet:
    cands = enumerate_candidates(limits, args.k, Variant(args.variant))
    if getattr(args, "types", None):
        allowed = {PathType(t.strip().upper()) for t in args.types.split(",")}
        cands = CandidateSet(cands.variant, cands.k,
                             tuple(c for c in cands if c.path_type in allowed))
    return cands


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_solve(args) -> int:
    sc = _scenario(args)
    start = parse_pose(args.start) if args.start else sc.start
    goal = parse_pose(args.goal) if args.goal else sc.goal
    if start is None or goal is None:
        raise UsageError("start and goal poses are required")
    cands = _candidates(args, sc.limits)
    env = None if sc.env.is_empty else sc.env
    res = best_path(start, goal, cands, env, sc.risk, args.ds_max)
    if res is None:
        print("no feasible path", file=sys.stderr)
        return EXIT_NO_SOLUTION
    sol, cost = res
    out = {"model": cands.name(), "start": list(start.as_tuple()), "goal": list(goal.as_tuple()),
           "solution": sol.to_dict(), "travel_time": sol.total_time, "cost": cost}
    if env is not None:
        out["time_risk_cost"] = path_cost(env, sample_path(start, sol, args.ds_max), sc.risk)
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_reach(args) -> int:
    pt = PathType(args.word.upper())
    speeds = parse_floats(args.speeds, 3, "--speeds")
    controls = tuple(ControlInput(v, s * args.omega) for v, s in zip(speeds, pt.turn_signs))
    start = parse_pose(args.start)
    window = None
    if args.window:
        window = tuple(parse_floats(args.window, 4, "--window"))
    sl = sample_reach_slice(start, args.theta_f, word_predicate(pt, controls), window, args.spacing)
    out = _out_dir(args)
    stem = f"reach_{pt.value}"
    (out / f"{stem}.csv").write_text(sl.to_csv())
    (out / f"{stem}.pgm").write_bytes(sl.to_pgm())
    print(json.dumps({"word": pt.value, "cells": int(sl.grid.size),
                      "reachable": int(sl.grid.sum()), "files": [f"{stem}.csv", f"{stem}.pgm"]}))
    return EXIT_OK


def cmd_montecarlo(args) -> int:
    limits = VehicleLimits(args.v_min, args.v_max, args.omega_max)
    models = [ModelSpec.parse(m) for m in args.models.split(",")]
    spec = BenchmarkSpec(args.trials, args.radius, models, args.seed, limits)
    report = run_montecarlo(spec, workers=args.workers)
    out = _out_dir(args)
    (out / "montecarlo.json").write_text(report.to_json())
    (out / "montecarlo.csv").write_text(report.to_csv())
    for m, s in report.summary().items():
        print(f"{m:>14s}  median travel time {s['travel_time']['median']:.4f} s  "
              f"mean solve time {s['solve_time']['mean']:.2e} s")
    return EXIT_OK


def cmd_plan(args) -> int:
    sc = _scenario(args)
    if sc.start is None or sc.goal is None:
        raise UsageError("scenario needs start and goal")
    cands = _candidates(args, sc.limits)
    if args.planner == "grid":
        spec = GridSpec(args.cell_size, args.headings)
        res = plan_grid(sc.env, spec, sc.start, sc.goal, sc.risk, cands,
                        ds_max=args.ds_max, v_max=sc.limits.v_max)
    else:
        cfg = RRTConfig(max_nodes=args.max_nodes, max_seconds=args.max_seconds,
                        radius=args.radius, goal_bias=args.goal_bias, ds_max=args.ds_max)
        res = plan_rrt_star(sc.env, cands, sc.start, sc.goal, cfg, args.seed,
                            RiskParams(sc.risk.t_star, 0.0) if args.time_only else sc.risk)
    if res is None:
        print("no path found", file=sys.stderr)
        return EXIT_NO_SOLUTION
    out = _out_dir(args)
    (out / "plan.json").write_text(res.to_json(indent=2))
    (out / "plan.csv").write_text(res.polyline_csv(args.ds_max))
    d = res.diagnostics
    nodes = d.get("nodes_expanded", d.get("tree_size"))
    print(f"planner={args.planner} model={cands.name()} nodes={nodes} "
          f"wall_time={d.get('wall_time', 0.0):.3f}s cost={res.cost:.4f} travel_time={res.total_time:.4f}")
    return EXIT_OK


def cmd_tsp(args) -> int:
    sc = _scenario(args)
    points = sc.points
    if args.points:
        vals = [float(t) for t in args.points.split(",")]
        if len(vals) % 2:
            raise UsageError("--points needs x,y pairs")
        points = list(zip(vals[::2], vals[1::2]))
    if not points:
        raise UsageError("no points given")
    headings = args.headings or sc.headings
    start = parse_pose(args.start) if args.start else (sc.start or Pose(0.0, 0.0, 0.0))
    cands = _candidates(args, sc.limits)
    env = None if sc.env.is_empty else sc.env
    res = solve_tsp(points, headings, start, cands, env, sc.risk if env else None, args.ds_max)
    if res is None:
        print("no feasible tour", file=sys.stderr)
        return EXIT_NO_SOLUTION
    text = json.dumps(res.to_dict(), indent=2)
    if args.out:
        (_out_dir(args) / "tour.json").write_text(text)
    print(json.dumps({"model": cands.name(), "pose_pairs": res.pose_pairs, "order": res.order,
                      "headings": res.headings, "total_time": res.total_time}))
    return EXIT_OK


def _add_common(p, scenario=True):
    if scenario:
        p.add_argument("--scenario", help="scenario JSON file")
    p.add_argument("--k", type=int, default=2, help="speeds per segment")
    p.add_argument("--variant", choices=[v.value for v in Variant], default="gmdm-prime")
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="risk weight")
    p.add_argument("--t-star", dest="t_star", type=float, default=None)
    p.add_argument("--ds-max", dest="ds_max", type=float, default=DEFAULT_DS_MAX)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gmdm", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="best path between two poses")
    _add_common(p)
    p.add_argument("--start", help="x,y,theta (use --start=-1,0,0 for negatives)")
    p.add_argument("--goal", help="x,y,theta")
    p.add_argument("--types", help="restrict to words, e.g. LSL,RSR")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reach", help="reachable-set slice for one word")
    p.add_argument("--word", required=True)
    p.add_argument("--speeds", default="0.1,0.5,1.0", help="v1,v2,v3")
    p.add_argument("--omega", type=float, default=1.0, help="turning rate magnitude")
    p.add_argument("--theta-f", dest="theta_f", type=float, default=0.0)
    p.add_argument("--start", default="0,0,0")
    p.add_argument("--window", help="xmin,ymin,xmax,ymax")
    p.add_argument("--spacing", type=float, default=0.02)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("montecarlo", help="random-goal benchmark")
    p.add_argument("--trials", type=int, default=5000)
    p.add_argument("--radius", type=float, default=3.0)
    p.add_argument("--models", default="dubins,gmdm-prime:2,gmdm-prime:3,gmdm-prime:4")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--v-min", dest="v_min", type=float, default=0.3)
    p.add_argument("--v-max", dest="v_max", type=float, default=1.0)
    p.add_argument("--omega-max", dest="omega_max", type=float, default=1.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("plan", help="plan through an obstacle scenario")
    _add_common(p)
    p.add_argument("--planner", choices=["grid", "rrt"], default="grid")
    p.add_argument("--cell-size", dest="cell_size", type=float, default=1.0)
    p.add_argument("--headings", type=int, default=8)
    p.add_argument("--max-nodes", dest="max_nodes", type=int, default=500)
    p.add_argument("--max-seconds", dest="max_seconds", type=float, default=None)
    p.add_argument("--radius", type=float, default=2.5, help="RRT* neighbour radius")
    p.add_argument("--goal-bias", dest="goal_bias", type=float, default=0.05)
    p.add_argument("--time-only", dest="time_only", action="store_true",
                   help="RRT* edges minimize travel time only")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("tsp", help="exact tour through up to 8 points")
    _add_common(p)
    p.add_argument("--points", help="x1,y1,x2,y2,...")
    p.add_argument("--headings", type=int, default=None)
    p.add_argument("--start", default=None)
    p.add_argument("--types", help="restrict to words, e.g. LSL,RSR")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_tsp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (UsageError, ScenarioError, ValueError, OSError) as e:
        print(f"gmdm: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
