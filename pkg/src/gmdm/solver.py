"""Closed-form forward and inverse solutions for three-segment multi-speed Dubins paths.

Every path is one of the six Dubins words, but each of its three segments
carries its own constant control input. Turning segments with a slower speed
have a proportionally smaller radius while keeping the same turning rate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .kinematics import (
    ANGLE_TOL,
    TWO_PI,
    ControlInput,
    Pose,
    apply_primitive,
    signed_mod,
)

# |arcsin argument| within 1 + ASIN_SLACK is clamped onto the boundary.
ASIN_SLACK = 1e-9
# a^2 + b^2 - r31^2 within -DISC_SLACK of zero is clamped to zero.
DISC_SLACK = 1e-12


class InvalidPathTypeError(ValueError):
    """Controls or segment specs do not match the requested path word."""


class PathType(enum.Enum):
    LSL = "LSL"
    RSR = "RSR"
    LSR = "LSR"
    RSL = "RSL"
    LRL = "LRL"
    RLR = "RLR"

    @property
    def is_ccc(self) -> bool:
        return self.value[1] != "S"

    @property
    def turn_signs(self) -> tuple[int, int, int]:
        """+1 for L, -1 for R, 0 for S, per segment."""
        return tuple({"L": 1, "R": -1, "S": 0}[ch] for ch in self.value)

    def __str__(self):
        return self.value


CSC_TYPES = (PathType.LSL, PathType.RSR, PathType.LSR, PathType.RSL)
CCC_TYPES = (PathType.LRL, PathType.RLR)
ALL_TYPES = CSC_TYPES + CCC_TYPES


@dataclass(frozen=True, slots=True)
class SegmentSpec:
    input: ControlInput
    tau: float

    def __post_init__(self):
        if not self.tau >= 0:
            raise ValueError(f"segment duration must be non-negative, got {self.tau}")

    @property
    def length(self) -> float:
        return self.input.v * self.tau

    @property
    def rotation(self) -> float:
        return self.input.omega * self.tau


@dataclass(frozen=True)
class PathSolution:
    path_type: PathType
    segments: tuple[SegmentSpec, SegmentSpec, SegmentSpec]
    total_time: float
    intermediate_poses: tuple[Pose, Pose]

    @property
    def taus(self) -> tuple[float, float, float]:
        return tuple(s.tau for s in self.segments)

    @property
    def controls(self) -> tuple[ControlInput, ControlInput, ControlInput]:
        return tuple(s.input for s in self.segments)

    @property
    def length(self) -> float:
        return sum(s.length for s in self.segments)

    def replay(self, p0: Pose) -> list[Pose]:
        """Poses [p0, p1, p2, pf] obtained by chaining the primitives."""
        poses = [p0]
        for seg in self.segments:
            poses.append(apply_primitive(poses[-1], seg.input, seg.tau))
        return poses

    def end_pose(self, p0: Pose) -> Pose:
        return forward(p0, self.path_type, self.segments)

    def translated(self, dx: float, dy: float) -> "PathSolution":
        p1, p2 = self.intermediate_poses
        return PathSolution(
            self.path_type, self.segments, self.total_time,
            (p1.translated(dx, dy), p2.translated(dx, dy)),
        )

    def to_dict(self) -> dict:
        return {
            "type": self.path_type.value,
            "segments": [
                {"v": s.input.v, "omega": s.input.omega, "tau": s.tau}
                for s in self.segments
            ],
            "total_time": self.total_time,
            "length": self.length,
        }


@dataclass(frozen=True, slots=True)
class InverseIntermediates:
    a: float
    b: float
    r1: float
    r3: float
    r31: float
    r12: Optional[float] = None
    r23: Optional[float] = None


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def check_controls(controls: Sequence[ControlInput], path_type: PathType) -> None:
    if len(controls) != 3:
        raise InvalidPathTypeError("a path needs exactly three controls")
    for u, s in zip(controls, path_type.turn_signs):
        if _sign(u.omega) != s:
            raise InvalidPathTypeError(
                f"control {u} does not match segment direction in {path_type}"
            )


def infer_path_type(controls: Sequence[ControlInput]) -> PathType:
    letters = "".join("S" if u.omega == 0 else ("L" if u.omega > 0 else "R") for u in controls)
    try:
        return PathType(letters)
    except ValueError:
        raise InvalidPathTypeError(f"{letters} is not an admissible path word") from None


def forward_csc(p0: Pose, specs: Sequence[SegmentSpec]) -> Pose:
    """End pose of a turn-straight-turn path in closed form."""
    s1, s2, s3 = specs
    if s1.input.omega == 0 or s2.input.omega != 0 or s3.input.omega == 0:
        raise InvalidPathTypeError("CSC needs turn, straight, turn segments")
    r1, r3 = s1.input.radius, s3.input.radius
    r31 = r3 - r1
    phi1, phi3 = s1.rotation, s3.rotation
    d2 = s2.length
    th0 = p0.theta
    th1 = th0 + phi1
    thf = th1 + phi3
    x = p0.x - r1 * math.sin(th0) - r31 * math.sin(th1) + d2 * math.cos(th1) + r3 * math.sin(thf)
    y = p0.y + r1 * math.cos(th0) + r31 * math.cos(th1) + d2 * math.sin(th1) - r3 * math.cos(thf)
    return Pose(x, y, thf)


def forward_ccc(p0: Pose, specs: Sequence[SegmentSpec]) -> Pose:
    """End pose of a turn-turn-turn path in closed form."""
    s1, s2, s3 = specs
    w1, w2, w3 = s1.input.omega, s2.input.omega, s3.input.omega
    if w1 == 0 or w2 == 0 or w3 == 0 or _sign(w1) == _sign(w2) or _sign(w2) == _sign(w3):
        raise InvalidPathTypeError("CCC needs three turns with alternating directions")
    r1, r2, r3 = s1.input.radius, s2.input.radius, s3.input.radius
    r12, r23 = r1 - r2, r2 - r3
    th0 = p0.theta
    th1 = th0 + s1.rotation
    th2 = th1 + s2.rotation
    thf = th2 + s3.rotation
    x = p0.x - r1 * math.sin(th0) + r12 * math.sin(th1) + r23 * math.sin(th2) + r3 * math.sin(thf)
    y = p0.y + r1 * math.cos(th0) - r12 * math.cos(th1) - r23 * math.cos(th2) - r3 * math.cos(thf)
    return Pose(x, y, thf)


def forward(p0: Pose, path_type: PathType, specs: Sequence[SegmentSpec]) -> Pose:
    check_controls([s.input for s in specs], path_type)
    if path_type.is_ccc:
        return forward_ccc(p0, specs)
    return forward_csc(p0, specs)


def compute_ab(p0: Pose, pf: Pose, r1: float, r3: float) -> tuple[float, float]:
    a = pf.x - p0.x + r1 * math.sin(p0.theta) - r3 * math.sin(pf.theta)
    b = pf.y - p0.y - r1 * math.cos(p0.theta) + r3 * math.cos(pf.theta)
    return a, b


def _rotation(target: float, source: float, omega: float) -> float:
    """Signed rotation taking heading ``source`` to ``target`` turning in the
    direction of ``omega``; always shorter than one full loop."""
    rot = signed_mod(target - source, math.copysign(TWO_PI, omega))
    if abs(rot) > TWO_PI - ANGLE_TOL:
        rot = 0.0
    return rot


def _clamped_asin(x: float) -> Optional[float]:
    if abs(x) > 1.0:
        if abs(x) > 1.0 + ASIN_SLACK:
            return None
        x = math.copysign(1.0, x)
    return math.asin(x)


def _build(p0: Pose, path_type: PathType, controls, taus) -> PathSolution:
    segs = tuple(SegmentSpec(u, t) for u, t in zip(controls, taus))
    p1 = apply_primitive(p0, segs[0].input, segs[0].tau)
    p2 = apply_primitive(p1, segs[1].input, segs[1].tau)
    return PathSolution(path_type, segs, taus[0] + taus[1] + taus[2], (p1, p2))


def inverse_csc(
    p0: Pose, pf: Pose, u1: ControlInput, u2: ControlInput, u3: ControlInput,
    path_type: PathType,
) -> Optional[PathSolution]:
    """Segment durations of a CSC path from ``p0`` to ``pf``, or None when
    ``pf`` lies in the open disk this word cannot reach."""
    if path_type.is_ccc:
        raise InvalidPathTypeError(f"{path_type} is not a CSC word")
    check_controls((u1, u2, u3), path_type)
    r1, r3 = u1.v / u1.omega, u3.v / u3.omega
    r31 = r3 - r1
    a, b = compute_ab(p0, pf, r1, r3)
    rho2 = a * a + b * b
    disc = rho2 - r31 * r31
    if disc < 0:
        if disc < -DISC_SLACK:
            return None
        disc = 0.0
    rho = math.sqrt(rho2)
    if rho == 0.0:
        # only reachable with r31 == 0 and coincident turn circles
        th1 = p0.theta
    else:
        s = _clamped_asin(-r31 / rho)
        if s is None:
            return None
        th1 = s - math.atan2(-b, a)
    phi1 = _rotation(th1, p0.theta, u1.omega)
    phi3 = _rotation(pf.theta, th1, u3.omega)
    taus = (phi1 / u1.omega, math.sqrt(disc) / u2.v, phi3 / u3.omega)
    return _build(p0, path_type, (u1, u2, u3), taus)


def inverse_ccc(
    p0: Pose, pf: Pose, u1: ControlInput, u2: ControlInput, u3: ControlInput,
    path_type: PathType,
) -> Optional[PathSolution]:
    """Segment durations of a CCC path, or None outside the reachable annulus.

    Only the branch whose middle arc exceeds a half turn is constructed.
    """
    if not path_type.is_ccc:
        raise InvalidPathTypeError(f"{path_type} is not a CCC word")
    check_controls((u1, u2, u3), path_type)
    r1, r2, r3 = u1.v / u1.omega, u2.v / u2.omega, u3.v / u3.omega
    r12, r23 = r1 - r2, r2 - r3
    a, b = compute_ab(p0, pf, r1, r3)
    rho2 = a * a + b * b
    rho = math.sqrt(rho2)
    if rho == 0.0:
        return None
    dr = r12 * r12 - r23 * r23
    s1 = _clamped_asin((rho2 + dr) / (2.0 * r12 * rho))
    s2 = _clamped_asin((rho2 - dr) / (2.0 * r23 * rho))
    if s1 is None or s2 is None:
        return None
    psi = math.atan2(-b, a)
    th1 = math.pi - s1 - psi
    th2 = math.pi - s2 - psi
    phi1 = _rotation(th1, p0.theta, u1.omega)
    phi2 = _rotation(th2, th1, u2.omega)
    phi3 = _rotation(pf.theta, th2, u3.omega)
    if abs(phi2) < math.pi - ANGLE_TOL:
        return None
    taus = (phi1 / u1.omega, phi2 / u2.omega, phi3 / u3.omega)
    return _build(p0, path_type, (u1, u2, u3), taus)


def solve_type(
    p0: Pose, pf: Pose, controls: Sequence[ControlInput], path_type: PathType,
) -> Optional[PathSolution]:
    u1, u2, u3 = controls
    if path_type.is_ccc:
        return inverse_ccc(p0, pf, u1, u2, u3, path_type)
    return inverse_csc(p0, pf, u1, u2, u3, path_type)


def inverse_intermediates(
    p0: Pose, pf: Pose, controls: Sequence[ControlInput], path_type: PathType,
) -> InverseIntermediates:
    check_controls(controls, path_type)
    r1, r3 = controls[0].radius, controls[2].radius
    a, b = compute_ab(p0, pf, r1, r3)
    if path_type.is_ccc:
        r2 = controls[1].radius
        return InverseIntermediates(a, b, r1, r3, r3 - r1, r1 - r2, r2 - r3)
    return InverseIntermediates(a, b, r1, r3, r3 - r1)
