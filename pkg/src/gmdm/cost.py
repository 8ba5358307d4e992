"""Collision-time risk and the time-risk path cost."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .environment import Environment
from .kinematics import Pose
from .solver import PathSolution

DEFAULT_DS_MAX = 0.05


@dataclass(frozen=True)
class RiskParams:
    """``t_star``: collision-time threshold (s) below which risk grows.
    ``lam``: exponent weighting risk against time; 0 means pure travel time."""

    t_star: float = 3.0
    lam: float = 2.0

    def __post_init__(self):
        if not self.t_star > 0:
            raise ValueError("t_star must be positive")
        if not self.lam >= 0:
            raise ValueError("risk weight must be non-negative")


@dataclass(frozen=True)
class RiskSample:
    d_c: float
    t_c: float
    R: float


def risk_value(t_c, t_star: float):
    """Risk factor for collision time(s) ``t_c``; 1 at or beyond ``t_star``.

    Works elementwise on arrays. ``t_c == 0`` gives infinity.
    """
    t_c = np.asarray(t_c, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        u = t_star / t_c
        r = 1.0 + u * np.log(u)
    r = np.where(t_c >= t_star, 1.0, r)
    r = np.where(t_c <= 0, np.inf, r)
    return r if r.ndim else float(r)


def risk_at(env: Environment, pose: Pose, v: float, params: RiskParams) -> RiskSample:
    if not v > 0:
        raise ValueError("speed must be positive")
    d_c = float(env.clearance(pose.x, pose.y, pose.theta))
    t_c = d_c / v
    return RiskSample(d_c, t_c, risk_value(t_c, params.t_star))


@dataclass
class SampledPath:
    """Arc-length samples of a path.

    Each non-degenerate segment contributes ``n + 1`` equally spaced samples
    (both endpoints included), so junction poses appear twice, once with each
    segment's speed. ``ds[i]`` is the step to the next sample of the same
    segment (0 for a segment's last sample).
    """

    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    v: np.ndarray
    ds: np.ndarray
    # (start, stop, tau) per sampled segment
    segments: list[tuple[int, int, float]]

    def __len__(self):
        return len(self.x)

    @property
    def length(self) -> float:
        return float(self.ds.sum())

    def poses(self) -> list[Pose]:
        return [Pose(float(a), float(b), float(c)) for a, b, c in zip(self.x, self.y, self.theta)]

    def end(self) -> Pose:
        return Pose(float(self.x[-1]), float(self.y[-1]), float(self.theta[-1]))


def _empty_sampled() -> SampledPath:
    z = np.zeros(0)
    return SampledPath(z, z, z, z, z, [])


def sample_path(p0: Pose, sol: PathSolution, ds_max: float = DEFAULT_DS_MAX) -> SampledPath:
    """Sample each segment at steps of at most ``ds_max`` using the closed-form
    primitive from the segment start (no accumulated drift)."""
    if not ds_max > 0:
        raise ValueError("ds_max must be positive")
    xs, ys, ths, vs, dss, segs = [], [], [], [], [], []
    start = p0
    count = 0
    for seg in sol.segments:
        u, tau = seg.input, seg.tau
        delta = u.v * tau
        if tau > 0 and delta > 0:
            n = max(1, math.ceil(delta / ds_max - 1e-9))
            t = np.arange(n + 1) * (tau / n)
            t[-1] = tau
            th = start.theta + u.omega * t
            # half-angle chord form of the turn primitive; reduces to a line at w = 0
            half = 0.5 * u.omega * t
            chord = u.v * t * np.sinc(half / math.pi)
            x = start.x + chord * np.cos(start.theta + half)
            y = start.y + chord * np.sin(start.theta + half)
            step = np.full(n + 1, delta / n)
            step[-1] = 0.0
            xs.append(x)
            ys.append(y)
            ths.append(np.mod(th, 2 * math.pi))
            vs.append(np.full(n + 1, u.v))
            dss.append(step)
            segs.append((count, count + n + 1, tau))
            count += n + 1
            start = Pose(float(x[-1]), float(y[-1]), float(th[-1]))
    if not segs:
        return _empty_sampled()
    return SampledPath(
        np.concatenate(xs), np.concatenate(ys), np.concatenate(ths),
        np.concatenate(vs), np.concatenate(dss), segs,
    )


def collides(env: Environment, sampled: SampledPath) -> bool:
    if len(sampled) == 0 or env.is_empty:
        return False
    return bool(np.any(env.blocked(sampled.x, sampled.y)))


def risk_profile(env: Environment, sampled: SampledPath, params: RiskParams) -> np.ndarray:
    """Risk factor at every sample."""
    if len(sampled) == 0:
        return np.zeros(0)
    d_c = env.clearance(sampled.x, sampled.y, sampled.theta)
    return np.asarray(risk_value(d_c / sampled.v, params.t_star), dtype=float).reshape(-1)


def path_cost(env: Environment, sampled: SampledPath, params: RiskParams) -> float:
    """Trapezoidal estimate of the integral of R^lambda / v over arc length.

    Collisions cost infinity. With ``lam == 0`` the integrand is piecewise
    constant and the result is exactly the travel time.
    """
    if len(sampled) == 0:
        return 0.0
    if collides(env, sampled):
        return math.inf
    if params.lam == 0 or env.is_empty:
        f = np.ones(len(sampled))
    else:
        f = risk_profile(env, sampled, params) ** params.lam
    return integrate_segments(f, sampled.segments)


def integrate_segments(f: np.ndarray, segments) -> float:
    """Trapezoid rule per segment on uniform steps: each segment contributes
    ``tau * mean_trapezoid(f)`` since ds / v = tau / n there."""
    total = 0.0
    for lo, hi, tau in segments:
        fs = f[lo:hi]
        total += tau * ((fs[0] * 0.5 + fs[1:-1].sum() + fs[-1] * 0.5) / (hi - lo - 1))
    return float(total)
