"""Obstacle fields with vectorized containment and ray-clearance queries."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .kinematics import Pose


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


@dataclass(frozen=True)
class Circle:
    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("circle radius must be positive")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    def contains(self, x, y):
        dx = np.asarray(x, dtype=float) - self.center[0]
        dy = np.asarray(y, dtype=float) - self.center[1]
        return dx * dx + dy * dy <= self.radius * self.radius

    def ray_distance(self, x, y, theta):
        x, y, theta = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (x, y, theta)))
        return np.where(self.contains(x, y), 0.0, self.ray_hit(x, y, np.cos(theta), np.sin(theta)))

    def ray_hit(self, x, y, dx, dy):
        """Entry distance along unit direction (dx, dy) for points outside."""
        fx, fy = x - self.center[0], y - self.center[1]
        b = fx * dx + fy * dy
        c = fx * fx + fy * fy - self.radius * self.radius
        disc = b * b - c
        with np.errstate(invalid="ignore"):
            t = -b - np.sqrt(disc)
        return np.where((disc >= 0) & (t >= 0), t, np.inf)

    def to_dict(self) -> dict:
        return {"type": "circle", "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = [(float(px), float(py)) for px, py in self.vertices]
        if len(pts) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        area2 = sum(_cross(*pts[i], *pts[(i + 1) % len(pts)]) for i in range(len(pts)))
        if abs(area2) < 1e-12:
            raise ValueError("degenerate polygon")
        if area2 < 0:
            pts.reverse()
        n = len(pts)
        for i in range(n):
            (ax, ay), (bx, by), (cx, cy) = pts[i], pts[(i + 1) % n], pts[(i + 2) % n]
            if _cross(bx - ax, by - ay, cx - bx, cy - by) < -1e-12:
                raise ValueError("polygon is not convex")
        object.__setattr__(self, "vertices", tuple(pts))
        v = np.array(pts)
        object.__setattr__(self, "_p", v)
        object.__setattr__(self, "_e", np.roll(v, -1, axis=0) - v)
        object.__setattr__(self, "_lo", v.min(axis=0))
        object.__setattr__(self, "_hi", v.max(axis=0))

    def contains(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        lo, hi = self._lo, self._hi
        near = (x >= lo[0]) & (x <= hi[0]) & (y >= lo[1]) & (y <= hi[1])
        out = np.zeros(x.shape, dtype=bool)
        if near.any():
            xs, ys = x[near][:, None], y[near][:, None]
            p, e = self._p, self._e
            side = _cross(e[:, 0], e[:, 1], xs - p[:, 0], ys - p[:, 1])
            out[near] = np.all(side >= 0, axis=-1)
        return out

    def ray_distance(self, x, y, theta):
        x, y, theta = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (x, y, theta)))
        return np.where(self.contains(x, y), 0.0, self.ray_hit(x, y, np.cos(theta), np.sin(theta)))

    def ray_hit(self, x, y, dx, dy):
        """Nearest edge crossing along unit direction (dx, dy)."""
        xs, ys = x[..., None], y[..., None]
        dx, dy = dx[..., None], dy[..., None]
        p, e = self._p, self._e
        denom = _cross(dx, dy, e[:, 0], e[:, 1])
        wx, wy = p[:, 0] - xs, p[:, 1] - ys
        with np.errstate(divide="ignore", invalid="ignore"):
            t = _cross(wx, wy, e[:, 0], e[:, 1]) / denom
            s = _cross(wx, wy, dx, dy) / denom
        ok = (denom != 0) & (t >= 0) & (s >= 0) & (s <= 1)
        return np.min(np.where(ok, t, np.inf), axis=-1)

    def to_dict(self) -> dict:
        return {"type": "polygon", "vertices": [list(v) for v in self.vertices]}


Obstacle = Union[Circle, ConvexPolygon]


@dataclass(frozen=True)
class Bounds:
    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self):
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise ValueError("empty bounds")

    def contains(self, x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        return (x >= self.xmin) & (x <= self.xmax) & (y >= self.ymin) & (y <= self.ymax)

    def exit_distance(self, x, y, theta):
        x, y, theta = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (x, y, theta)))
        return self._exit(x, y, np.cos(theta), np.sin(theta))

    def _exit(self, x, y, dx, dy):
        with np.errstate(divide="ignore", invalid="ignore"):
            tx = np.where(dx > 0, (self.xmax - x) / dx, np.where(dx < 0, (self.xmin - x) / dx, np.inf))
            ty = np.where(dy > 0, (self.ymax - y) / dy, np.where(dy < 0, (self.ymin - y) / dy, np.inf))
        t = np.maximum(np.minimum(tx, ty), 0.0)
        return np.where(self.contains(x, y), t, 0.0)


@dataclass(frozen=True)
class Environment:
    obstacles: tuple = field(default_factory=tuple)
    bounds: Optional[Bounds] = None

    def __post_init__(self):
        object.__setattr__(self, "obstacles", tuple(self.obstacles))

    @property
    def is_empty(self) -> bool:
        return not self.obstacles and self.bounds is None

    def blocked(self, x, y):
        """True where a point is inside an obstacle (boundary included) or
        outside the bounds."""
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        hit = np.zeros(np.broadcast(x, y).shape, dtype=bool)
        for ob in self.obstacles:
            hit |= ob.contains(x, y)
        if self.bounds is not None:
            hit |= ~self.bounds.contains(x, y)
        return hit

    def clearance(self, x, y, theta):
        """Distance along each heading to the nearest obstacle or bound;
        0 inside an obstacle."""
        x, y, theta = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (x, y, theta)))
        dx, dy = np.cos(theta), np.sin(theta)
        d = np.full(x.shape, np.inf)
        inside = np.zeros(x.shape, dtype=bool)
        for ob in self.obstacles:
            d = np.minimum(d, ob.ray_hit(x, y, dx, dy))
            inside |= ob.contains(x, y)
        if self.bounds is not None:
            d = np.minimum(d, self.bounds._exit(x, y, dx, dy))
        return np.where(inside, 0.0, d)


def clearance_ray(env: Environment, pose: Pose) -> float:
    """Tangential clearance from ``pose`` along its heading; 0 inside an obstacle."""
    return float(env.clearance(pose.x, pose.y, pose.theta))


def make_polygon(vertices: Sequence[Sequence[float]]) -> ConvexPolygon:
    return ConvexPolygon(tuple((float(x), float(y)) for x, y in vertices))


def box(xmin: float, ymin: float, xmax: float, ymax: float) -> ConvexPolygon:
    return ConvexPolygon(((xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)))

