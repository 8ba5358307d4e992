"""Independent reference implementations used only by the tests."""

import math
import random

TWO_PI = 2 * math.pi


def rk4(x, y, th, v, omega, tau, h=1e-4):
    """Integrate xdot = v cos th, ydot = v sin th, thdot = omega with RK4."""
    n = max(1, math.ceil(tau / h))
    h = tau / n

    def f(s):
        return (v * math.cos(s[2]), v * math.sin(s[2]), omega)

    s = (x, y, th)
    for _ in range(n):
        k1 = f(s)
        k2 = f(tuple(a + 0.5 * h * b for a, b in zip(s, k1)))
        k3 = f(tuple(a + 0.5 * h * b for a, b in zip(s, k2)))
        k4 = f(tuple(a + h * b for a, b in zip(s, k3)))
        s = tuple(a + h / 6 * (b + 2 * c + 2 * d + e) for a, b, c, d, e in zip(s, k1, k2, k3, k4))
    return s


def _m(a):
    return a % TWO_PI


def _step(state, kind, arc):
    """Advance a unit-radius unit-speed car by ``arc`` along L, S or R."""
    x, y, th = state
    if kind == "S":
        return x + arc * math.cos(th), y + arc * math.sin(th), th
    s = 1.0 if kind == "L" else -1.0
    nth = th + s * arc
    return x + s * (math.sin(nth) - math.sin(th)), y - s * (math.cos(nth) - math.cos(th)), nth


def _words(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    cab = math.cos(alpha - beta)
    out = {}
    p2 = 2 + d * d - 2 * cab + 2 * d * (sa - sb)
    if p2 >= 0:
        t1 = math.atan2(cb - ca, d + sa - sb)
        out["LSL"] = (_m(-alpha + t1), math.sqrt(p2), _m(beta - t1))
    p2 = 2 + d * d - 2 * cab + 2 * d * (sb - sa)
    if p2 >= 0:
        t1 = math.atan2(ca - cb, d - sa + sb)
        out["RSR"] = (_m(alpha - t1), math.sqrt(p2), _m(-beta + t1))
    p2 = -2 + d * d + 2 * cab + 2 * d * (sa + sb)
    if p2 >= 0:
        p = math.sqrt(p2)
        t2 = math.atan2(-ca - cb, d + sa + sb) - math.atan2(-2.0, p)
        out["LSR"] = (_m(-alpha + t2), p, _m(-beta + t2))
    p2 = d * d - 2 + 2 * cab - 2 * d * (sa + sb)
    if p2 >= 0:
        p = math.sqrt(p2)
        t2 = math.atan2(ca + cb, d - sa - sb) - math.atan2(2.0, p)
        out["RSL"] = (_m(alpha - t2), p, _m(beta - t2))
    c = (6 - d * d + 2 * cab + 2 * d * (sa - sb)) / 8
    if abs(c) <= 1:
        p = _m(TWO_PI - math.acos(c))
        t = _m(alpha - math.atan2(ca - cb, d - sa + sb) + p / 2)
        out["RLR"] = (t, p, _m(alpha - beta - t + p))
    c = (6 - d * d + 2 * cab + 2 * d * (sb - sa)) / 8
    if abs(c) <= 1:
        p = _m(TWO_PI - math.acos(c))
        t = _m(-alpha - math.atan2(ca - cb, d + sa - sb) + p / 2)
        out["LRL"] = (t, p, _m(beta - alpha - t + p))
    return out


def dubins_shortest(p0, pf, r):
    """Classic constant-speed Dubins shortest length, via the normalized
    (alpha, beta, d) frame. Each word's parameters are replayed and kept only
    if they really land on ``pf``, so a mistyped formula can only drop words."""
    dx, dy = pf[0] - p0[0], pf[1] - p0[1]
    phi = math.atan2(dy, dx)
    d = math.hypot(dx, dy) / r
    alpha, beta = _m(p0[2] - phi), _m(pf[2] - phi)
    best = math.inf
    for word, params in _words(alpha, beta, d).items():
        s = (0.0, 0.0, alpha)
        for kind, arc in zip(word, params):
            s = _step(s, kind, arc)
        ok = math.hypot(s[0] - d, s[1]) < 1e-7 and abs(math.remainder(s[2] - beta, TWO_PI)) < 1e-7
        if ok:
            best = min(best, sum(params) * r)
    return best


def random_pose(rng, span=5.0):
    return (rng.uniform(-span, span), rng.uniform(-span, span), rng.uniform(0, TWO_PI))


def make_rng(seed):
    return random.Random(seed)


def rk4_batch(x, y, th, v, omega, tau, h=1e-4):
    """Vectorized RK4 over many primitives at once. Each primitive uses the same
    step count, so its own step never exceeds ``h``.

    The heading rate is constant, so stages 2 and 3 share the midpoint heading
    and each step's end heading is the next step's start.
    """
    import numpy as np

    n = max(1, math.ceil(float(np.max(tau)) / h))
    dt = np.asarray(tau, dtype=float) / n
    x, y = np.array(x, dtype=float), np.array(y, dtype=float)
    th0 = np.array(th, dtype=float)
    w = dt * omega
    c0, s0 = np.cos(th0), np.sin(th0)
    for k in range(n):
        tm = th0 + (k + 0.5) * w
        t1 = th0 + (k + 1) * w
        cm, sm, c1, s1 = np.cos(tm), np.sin(tm), np.cos(t1), np.sin(t1)
        x += dt * v / 6 * (c0 + 4 * cm + c1)
        y += dt * v / 6 * (s0 + 4 * sm + s1)
        c0, s0 = c1, s1
    return x, y, th0 + n * w
