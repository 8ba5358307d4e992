"""Closed-form reachable sets of the CSC and CCC words.

For a fixed final heading the poses a CSC word cannot reach form an open disk
of radius |r3 - r1|; a CCC word reaches only a closed annulus. Both are
centred on the same point (c, d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .kinematics import ControlInput, Pose
from .solver import PathType, check_controls

# absolute slack on squared-distance comparisons (m^2)
REACH_SLACK = 1e-12


@dataclass(frozen=True)
class ReachGeometry:
    c: float
    d: float
    inner_radius: float
    outer_radius: Optional[float] = None


def reach_center(p0: Pose, theta_f: float, r1: float, r3: float) -> tuple[float, float]:
    c = p0.x - r1 * math.sin(p0.theta) + r3 * math.sin(theta_f)
    d = p0.y + r1 * math.cos(p0.theta) - r3 * math.cos(theta_f)
    return c, d


def reach_geometry(
    p0: Pose, theta_f: float, r1: float, r3: float, r2: Optional[float] = None,
) -> ReachGeometry:
    c, d = reach_center(p0, theta_f, r1, r3)
    outer = None if r2 is None else abs((r1 - r2) - (r2 - r3))
    return ReachGeometry(c, d, abs(r3 - r1), outer)


def _dist2(pf: Pose, c: float, d: float) -> float:
    return (pf.x - c) ** 2 + (pf.y - d) ** 2


def csc_reachable(p0: Pose, pf: Pose, r1: float, r3: float) -> bool:
    c, d = reach_center(p0, pf.theta, r1, r3)
    return _dist2(pf, c, d) >= (r3 - r1) ** 2 - REACH_SLACK


def ccc_reachable(p0: Pose, pf: Pose, r1: float, r2: float, r3: float) -> bool:
    c, d = reach_center(p0, pf.theta, r1, r3)
    q = _dist2(pf, c, d)
    outer = ((r1 - r2) - (r2 - r3)) ** 2
    return (r3 - r1) ** 2 - REACH_SLACK <= q <= outer + REACH_SLACK


def full_reach_holds(p0: Pose, pf: Pose, r1: float, r3: float) -> bool:
    """Whether LSL or RSR (radius magnitudes r1, r3) reaches ``pf``."""
    if not (r1 > 0 and r3 > 0):
        raise ValueError("radius magnitudes must be positive")
    return csc_reachable(p0, pf, r1, r3) or csc_reachable(p0, pf, -r1, -r3)


def excluded_disks_gap(theta0: float, theta_f: float, r1: float, r3: float) -> float:
    """Centre distance minus radius sum for the LSL and RSR excluded disks.

    Non-negative whenever the two disks are disjoint.
    """
    p0 = Pose(0.0, 0.0, theta0)
    cl, dl = reach_center(p0, theta_f, r1, r3)
    cr, dr = reach_center(p0, theta_f, -r1, -r3)
    return math.hypot(cl - cr, dl - dr) - 2.0 * abs(r3 - r1)


def word_predicate(path_type: PathType, controls) -> Callable[[Pose, Pose], bool]:
    """Reachability predicate (p0, pf) -> bool for a word with fixed controls."""
    check_controls(controls, path_type)
    r1, r3 = controls[0].radius, controls[2].radius
    if path_type.is_ccc:
        r2 = controls[1].radius
        return lambda p0, pf: ccc_reachable(p0, pf, r1, r2, r3)
    return lambda p0, pf: csc_reachable(p0, pf, r1, r3)


def word_controls(path_type: PathType, speeds, omega: float = 1.0) -> tuple[ControlInput, ...]:
    return tuple(ControlInput(v, s * omega) for v, s in zip(speeds, path_type.turn_signs))


@dataclass
class ReachSlice:
    theta_f: float
    origin: tuple[float, float]
    spacing: float
    # grid[row, col]; row indexes y, col indexes x
    grid: np.ndarray

    def cell_center(self, row: int, col: int) -> tuple[float, float]:
        return (self.origin[0] + (col + 0.5) * self.spacing,
                self.origin[1] + (row + 0.5) * self.spacing)

    def centers(self) -> tuple[np.ndarray, np.ndarray]:
        rows, cols = self.grid.shape
        xs = self.origin[0] + (np.arange(cols) + 0.5) * self.spacing
        ys = self.origin[1] + (np.arange(rows) + 0.5) * self.spacing
        return xs, ys

    def to_csv(self) -> str:
        xs, ys = self.centers()
        lines = ["x,y,reachable"]
        for i, y in enumerate(ys):
            for j, x in enumerate(xs):
                lines.append(f"{x:.6f},{y:.6f},{int(self.grid[i, j])}")
        return "\n".join(lines) + "\n"

    def to_pgm(self) -> bytes:
        """Binary PGM: white reachable, black unreachable, +y up."""
        rows, cols = self.grid.shape
        img = np.where(self.grid[::-1], 255, 0).astype(np.uint8)
        return f"P5\n{cols} {rows}\n255\n".encode() + img.tobytes()


def sample_reach_slice(
    p0: Pose,
    theta_f: float,
    predicate: Callable[[Pose, Pose], bool],
    window: tuple[float, float, float, float] = None,
    spacing: float = 0.02,
) -> ReachSlice:
    """Evaluate ``predicate(p0, pf)`` at every cell centre of an x-y window.

    ``window`` is (xmin, ymin, xmax, ymax); the default is 6 m x 6 m about p0.
    """
    if not spacing > 0:
        raise ValueError("spacing must be positive")
    if window is None:
        window = (p0.x - 3.0, p0.y - 3.0, p0.x + 3.0, p0.y + 3.0)
    xmin, ymin, xmax, ymax = window
    cols = int(round((xmax - xmin) / spacing))
    rows = int(round((ymax - ymin) / spacing))
    if rows <= 0 or cols <= 0:
        raise ValueError("empty window")
    grid = np.zeros((rows, cols), dtype=bool)
    for i in range(rows):
        y = ymin + (i + 0.5) * spacing
        for j in range(cols):
            grid[i, j] = predicate(p0, Pose(xmin + (j + 0.5) * spacing, y, theta_f))
    return ReachSlice(theta_f, (xmin, ymin), spacing, grid)
