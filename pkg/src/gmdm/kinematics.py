"""SE(2) poses, control inputs and the constant-input motion primitives."""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

# Shared angle-equality tolerance (rad).
ANGLE_TOL = 1e-9


class WrongPrimitiveError(ValueError):
    """Raised when a turn primitive receives a straight input or vice versa."""


def signed_mod(a: float, m: float) -> float:
    """Floor modulus ``a - m * floor(a / m)``, carrying the sign of ``m``.

    The result lies in ``[0, m)`` for positive ``m`` and in ``(m, 0]`` for
    negative ``m``, except that rounding can land exactly on ``m``. No
    tolerance snapping is applied here.
    """
    if m == 0:
        raise ValueError("modulus must be non-zero")
    # float % is an exact floor modulus; the written formula loses the sign
    # when a / m underflows
    return a % m


def normalize_angle(theta: float) -> float:
    """Wrap an angle into [0, 2*pi)."""
    t = signed_mod(theta, TWO_PI)
    # floor-mod of tiny negatives rounds up to exactly 2*pi
    return 0.0 if t >= TWO_PI else t


def angle_diff(a: float, b: float) -> float:
    """Smallest signed difference a - b in (-pi, pi]."""
    d = signed_mod(a - b, TWO_PI)
    return d - TWO_PI if d > math.pi else d


@dataclass(frozen=True, slots=True)
class Pose:
    """Planar pose. ``theta`` is normalized to [0, 2*pi) on construction."""

    x: float
    y: float
    theta: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.theta)):
            raise ValueError(f"non-finite pose {self.x, self.y, self.theta}")
        object.__setattr__(self, "theta", normalize_angle(self.theta))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.theta)

    def translated(self, dx: float, dy: float) -> "Pose":
        return Pose(self.x + dx, self.y + dy, self.theta)

    def close_to(self, other: "Pose", tol: float = 1e-9, angle_tol: float = ANGLE_TOL) -> bool:
        return (
            abs(self.x - other.x) <= tol
            and abs(self.y - other.y) <= tol
            and abs(angle_diff(self.theta, other.theta)) <= angle_tol
        )


@dataclass(frozen=True, slots=True)
class ControlInput:
    """Constant (speed, signed turning rate) pair. ``omega > 0`` turns left."""

    v: float
    omega: float = 0.0

    def __post_init__(self):
        if not (self.v > 0 and math.isfinite(self.v)):
            raise ValueError(f"speed must be positive and finite, got {self.v}")
        if not math.isfinite(self.omega):
            raise ValueError(f"turning rate must be finite, got {self.omega}")

    @property
    def radius(self) -> float:
        """Signed turning radius v/omega; infinite for straight motion."""
        return self.v / self.omega if self.omega != 0 else math.inf

    @property
    def is_straight(self) -> bool:
        return self.omega == 0


@dataclass(frozen=True, slots=True)
class VehicleLimits:
    v_min: float
    v_max: float
    omega_max: float

    def __post_init__(self):
        if not (0 < self.v_min <= self.v_max):
            raise ValueError("need 0 < v_min <= v_max")
        if not self.omega_max > 0:
            raise ValueError("omega_max must be positive")

    @property
    def max_curvature(self) -> float:
        return self.omega_max / self.v_min

    @property
    def min_radius(self) -> float:
        return self.v_min / self.omega_max

    def admits(self, u: ControlInput, tol: float = 1e-12) -> bool:
        return (
            self.v_min - tol <= u.v <= self.v_max + tol
            and abs(u.omega) <= self.omega_max + tol
        )

    def control(self, v: float, omega: float = 0.0) -> ControlInput:
        """Build a control input, rejecting anything outside the limits."""
        u = ControlInput(v, omega)
        if not self.admits(u):
            raise ValueError(f"control {u} outside vehicle limits {self}")
        return u


@dataclass(frozen=True, slots=True)
class SegmentGeometry:
    """Signed radius, length and signed rotation of one path segment."""

    r: float
    delta: float
    phi: float

    @classmethod
    def of(cls, u: ControlInput, tau: float) -> "SegmentGeometry":
        return cls(u.radius, u.v * tau, u.omega * tau)


def _check_tau(tau: float) -> None:
    if not tau >= 0:
        raise ValueError(f"duration must be non-negative, got {tau}")


def apply_turn(p: Pose, u: ControlInput, tau: float) -> Pose:
    _check_tau(tau)
    if u.omega == 0:
        raise WrongPrimitiveError("apply_turn needs a non-zero turning rate")
    if tau == 0:
        return p
    half = 0.5 * u.omega * tau
    # (v/w)(sin(th+wt) - sin th) rewritten with half angles; stable as w -> 0
    chord = u.v * tau * (math.sin(half) / half if half != 0 else 1.0)
    mid = p.theta + half
    return Pose(p.x + chord * math.cos(mid), p.y + chord * math.sin(mid), p.theta + 2 * half)


def apply_straight(p: Pose, u: ControlInput, tau: float) -> Pose:
    _check_tau(tau)
    if u.omega != 0:
        raise WrongPrimitiveError("apply_straight needs a zero turning rate")
    if tau == 0:
        return p
    d = u.v * tau
    return Pose(p.x + d * math.cos(p.theta), p.y + d * math.sin(p.theta), p.theta)


def apply_primitive(p: Pose, u: ControlInput, tau: float) -> Pose:
    """Evolve ``p`` under constant input ``u`` for ``tau`` seconds."""
    if u.omega == 0:
        return apply_straight(p, u, tau)
    return apply_turn(p, u, tau)


def rigid_transform(p: Pose, angle: float, dx: float, dy: float) -> Pose:
    """Rotate ``p`` about the origin by ``angle`` then translate by (dx, dy)."""
    c, s = math.cos(angle), math.sin(angle)
    return Pose(c * p.x - s * p.y + dx, s * p.x + c * p.y + dy, p.theta + angle)
