"""Brute-force ground truth used to check the analytic bounds and the conflict solver."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Point2, to_global
from .kinematics import InfeasibleError, Mode, PathParams, TurnSpec, position_at_distance


class OracleUnreachable(InfeasibleError):
    pass


# --------------------------------------------------------------------------
# Dense (r, theta_c) grid over path families through one point


def _left_frame(spec: TurnSpec, p, r_cap: float):
    x, y = spec.local(p)
    if spec.mode is Mode.LEFT:
        return x, y, spec.r_alpha, spec.r_beta, spec.theta_alpha, spec.theta_beta
    if spec.mode is Mode.RIGHT:
        return x, -y, -spec.r_beta, -spec.r_alpha, -spec.theta_beta, -spec.theta_alpha
    if y >= 0:
        return x, y, spec.r_alpha, r_cap, 1e-12, spec.theta_beta
    return x, -y, -spec.r_beta, r_cap, 1e-12, -spec.theta_alpha


def _radius_family(x, y, rs, ta, tb):
    """Tangent exits for each radius, found from the circle centre geometry."""
    dx, dy = x, y - rs
    dist = np.hypot(dx, dy)
    ok = dist >= rs
    ratio = np.where(ok, rs / np.where(dist > 0, dist, 1.0), 0.0)
    th = np.arctan2(dy, dx) + np.arcsin(np.clip(ratio, -1, 1))
    th = np.mod(th, 2 * math.pi)
    th = np.where(th <= 0, th + 2 * math.pi, th)
    ell = np.sqrt(np.maximum(dist * dist - rs * rs, 0.0))
    ok &= (th >= ta - 1e-12) & (th <= tb + 1e-12)
    return rs * th + ell, ok


def _heading_family(x, y, ths, ra, rb):
    """Solve r*(sin, 1 - cos) + ell*(cos, sin) = p for each fixed exit heading."""
    s, c = np.sin(ths), np.cos(ths)
    # columns: r -> (s, 1 - c), ell -> (c, s)
    det = s * s - (1 - c) * c
    good = np.abs(det) > 1e-14
    det = np.where(good, det, 1.0)
    r = (x * s - y * c) / det
    ell = (s * y - (1 - c) * x) / det
    ok = good & (ell >= -1e-9) & (r >= ra * (1 - 1e-12)) & (r <= rb * (1 + 1e-12))
    return r * ths + np.maximum(ell, 0.0), ok


def _arc_value(x, y, ra, rb, tb):
    if y <= 0:
        return None
    r_m = (x * x + y * y) / (2 * y)
    th_m = 2 * math.atan2(y, x)
    if ra * (1 - 1e-12) <= r_m <= rb * (1 + 1e-12) and th_m <= tb + 1e-12:
        return r_m * th_m
    return None


def _zoom(family, lo, hi, n, pick, tol, rounds=40):
    grid = np.linspace(lo, hi, n)
    vals, ok = family(grid)
    if not ok.any():
        return None
    best = pick(vals[ok])
    for _ in range(rounds):
        idx = np.flatnonzero(ok)
        j = idx[np.argmin(vals[ok]) if pick is np.min else np.argmax(vals[ok])]
        step = grid[1] - grid[0]
        a, b = max(lo, grid[j] - 2 * step), min(hi, grid[j] + 2 * step)
        grid = np.linspace(a, b, n)
        vals, ok = family(grid)
        if not ok.any():
            break
        nb = pick([best, pick(vals[ok])])
        moved = abs(nb - best)
        best = nb
        if moved < tol and b - a < 1e-9 * max(1.0, abs(hi)):
            break
    return float(best)


def grid_min_max_dist(spec: TurnSpec, p, n_r: int = 2000, n_theta: int = 2000, tol: float = 1e-9,
                      r_cap: float | None = None, refine: bool = True):
    """Observed (min, max) path length through ``p`` over a dense parameter grid."""
    if r_cap is None:
        r_cap = 50.0 * max(abs(spec.r_alpha), abs(spec.r_beta), 1.0)
    x, y, ra, rb, ta, tb = _left_frame(spec, p, r_cap)
    if x == 0 and y == 0:
        return 0.0, 0.0
    if spec.mode is Mode.EITHER and y == 0 and x > 0:
        return float(x), float(x)
    fams = [
        (lambda g: _radius_family(x, y, g, ta, tb), ra, rb, n_r),
        (lambda g: _heading_family(x, y, g, ra, rb), ta, tb, n_theta),
    ]
    lows, highs = [], []
    for fam, lo, hi, n in fams:
        for pick, out in ((np.min, lows), (np.max, highs)):
            if refine:
                v = _zoom(fam, lo, hi, n, pick, tol)
            else:
                vals, ok = fam(np.linspace(lo, hi, n))
                v = float(pick(vals[ok])) if ok.any() else None
            if v is not None:
                out.append(v)
    arc = _arc_value(x, y, ra, rb, tb)
    if arc is not None:
        lows.append(arc)
        highs.append(arc)
    if not lows:
        raise OracleUnreachable(f"no grid path reaches {tuple(p)}", "grid")
    return min(lows), max(highs)


# --------------------------------------------------------------------------
# Trajectory simulation


@dataclass(frozen=True)
class SpeedProfile:
    """Piecewise-constant speed: ``breakpoints[i] = (t_i, s_i)`` holds from t_i to t_{i+1}."""

    breakpoints: tuple

    def __post_init__(self):
        ts = [b[0] for b in self.breakpoints]
        if not ts or ts[0] != 0 or any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("SpeedProfile breakpoints must start at t=0 and strictly increase")

    @classmethod
    def constant(cls, s: float) -> "SpeedProfile":
        return cls(((0.0, float(s)),))

    def within(self, s_lo: float, s_hi: float) -> bool:
        return all(s_lo <= s <= s_hi for _, s in self.breakpoints)

    def distance(self, t: float) -> float:
        d = 0.0
        bps = self.breakpoints
        for i, (t0, s) in enumerate(bps):
            t1 = bps[i + 1][0] if i + 1 < len(bps) else math.inf
            if t <= t0:
                break
            d += s * (min(t, t1) - t0)
        return d


@dataclass(frozen=True)
class TrajectorySample:
    params: PathParams
    profile: SpeedProfile = field(default_factory=lambda: SpeedProfile.constant(1.0))


def _check_chi(spec: TurnSpec, sample: TrajectorySample):
    r, th = sample.params.r, sample.params.theta_c
    if spec.mode is Mode.EITHER:
        ok_r = r >= spec.r_alpha or r <= spec.r_beta
        ok_t = spec.theta_alpha <= th <= spec.theta_beta and (r > 0) == (th > 0)
    else:
        ok_r = spec.r_alpha <= r <= spec.r_beta
        ok_t = spec.theta_alpha <= th <= spec.theta_beta
    if not (ok_r and ok_t and sample.profile.within(spec.s_alpha, spec.s_beta)):
        raise InfeasibleError("trajectory sample violates the envelope constraints", "chi")


def simulate(spec: TurnSpec, sample: TrajectorySample, t: float) -> Point2:
    """World position at time ``t`` along the sampled trajectory."""
    _check_chi(spec, sample)
    d = sample.profile.distance(t)
    return to_global(position_at_distance(sample.params, d), spec.pose)


def _positions(r, th, d):
    """Vectorised local positions for signed radii ``r`` and bearings ``th``."""
    arc = r * th
    on_arc = d <= arc
    phi = np.where(on_arc, d / r, th)
    ell = np.where(on_arc, 0.0, d - arc)
    x = r * np.sin(phi) + ell * np.cos(th)
    y = r * (1 - np.cos(phi)) + ell * np.sin(th)
    return x, y


def _sample_params(spec: TurnSpec, n: int, rng, r_cap_factor: float = 10.0):
    if spec.mode is Mode.EITHER:
        left = rng.random(n) < 0.5
        rl = rng.uniform(spec.r_alpha, spec.r_alpha * r_cap_factor, n)
        rr = rng.uniform(spec.r_beta * r_cap_factor, spec.r_beta, n)
        tl = rng.uniform(1e-9, spec.theta_beta, n) if spec.theta_beta > 0 else np.full(n, np.nan)
        tr = rng.uniform(spec.theta_alpha, -1e-9, n) if spec.theta_alpha < 0 else np.full(n, np.nan)
        r = np.where(left, rl, rr)
        th = np.where(left, tl, tr)
        bad = np.isnan(th)
        r, th = np.where(bad, spec.r_alpha, r), np.where(bad, 1e-9, th)
        return r, th
    return (rng.uniform(spec.r_alpha, spec.r_beta, n), rng.uniform(spec.theta_alpha, spec.theta_beta, n))


def _sample_profiles(spec: TurnSpec, n: int, horizon: float, rng):
    """Three-segment piecewise-constant speeds; half of the segments sit on a speed bound."""
    cuts = np.sort(rng.uniform(0, horizon, (n, 2)), axis=1)
    speeds = rng.uniform(spec.s_alpha, spec.s_beta, (n, 3))
    extreme = rng.random((n, 3)) < 0.5
    bound = np.where(rng.random((n, 3)) < 0.5, spec.s_alpha, spec.s_beta)
    speeds = np.where(extreme, bound, speeds)
    return cuts, speeds


def _distance_at(t, cuts, speeds):
    t1, t2 = cuts[:, 0], cuts[:, 1]
    a = np.minimum(t, t1)
    b = np.clip(t - t1, 0, None) - np.clip(t - t2, 0, None)
    c = np.clip(t - t2, 0, None)
    return speeds[:, 0] * a + speeds[:, 1] * b + speeds[:, 2] * c


@dataclass
class MonteCarloResult:
    hits: list
    samples: int
    steps: int

    @property
    def times(self):
        return [h[0] for h in self.hits]


def monte_carlo_collisions(own: TurnSpec, intr: TurnSpec, n: int, eps: float, dt: float,
                           horizon: float, seed: int = 0, detail: bool = False):
    """Random trajectory pairs stepped in time; every close approach is recorded."""
    if n < 1:
        raise ValueError("monte_carlo_collisions: n must be >= 1")
    rng = np.random.default_rng(seed)
    params = [_sample_params(v, n, rng) for v in (own, intr)]
    profiles = [_sample_profiles(v, n, horizon, rng) for v in (own, intr)]
    hits = []
    steps = int(math.floor(horizon / dt + 1e-9)) + 1
    poses = [(v.pose.position, math.cos(v.pose.heading), math.sin(v.pose.heading)) for v in (own, intr)]
    for k in range(steps):
        t = k * dt
        world = []
        for (r, th), (cuts, speeds), (p0, c, s) in zip(params, profiles, poses):
            lx, ly = _positions(r, th, _distance_at(t, cuts, speeds))
            world.append((p0[0] + c * lx - s * ly, p0[1] + s * lx + c * ly))
        (ax, ay), (bx, by) = world
        close = np.flatnonzero(np.hypot(ax - bx, ay - by) <= eps)
        for i in close:
            hits.append((t, Point2(0.5 * (ax[i] + bx[i]), 0.5 * (ay[i] + by[i]))))
    res = MonteCarloResult(hits, n, steps)
    return res if detail else hits


# --------------------------------------------------------------------------
# Time-stepped conflict wave on a grid


@dataclass(frozen=True)
class RasterResult:
    first_touch: float | None
    last_touch: float | None
    marked: int
    clipped: tuple | None = None

    def __iter__(self):
        return iter((self.first_touch, self.last_touch))


def _raster_points(polygon, cell, clip):
    from .geometry import polygon_vertices, region_edges

    verts, rays = polygon_vertices(polygon)
    clipped = None
    if rays or not polygon.bounded:
        if clip is None:
            raise ValueError("rasterize_conflict_wave: unbounded polygon needs a clip box")
        clipped = tuple(clip)
        xmin, xmax, ymin, ymax = clip
    else:
        xs = [v[0] for v in verts]
        ys = [v[1] for v in verts]
        xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    gx = np.arange(xmin, xmax + cell, cell)
    gy = np.arange(ymin, ymax + cell, cell)
    X, Y = np.meshgrid(gx, gy)
    X, Y = X.ravel(), Y.ravel()
    keep = polygon.contains_many(X, Y, 0.0)
    X, Y = X[keep], Y[keep]
    # boundary samples so that extremes on edges are not lost between cells
    bx, by = [np.array([v[0] for v in verts])], [np.array([v[1] for v in verts])]
    for start, d, length in region_edges(polygon):
        if not math.isfinite(length):
            continue
        u = np.arange(0.0, length, cell / 2)
        bx.append(start[0] + u * d[0])
        by.append(start[1] + u * d[1])
    bx, by = np.concatenate(bx), np.concatenate(by)
    inb = (bx >= xmin) & (bx <= xmax) & (by >= ymin) & (by <= ymax)
    return np.concatenate([X, bx[inb]]), np.concatenate([Y, by[inb]]), clipped


def rasterize_conflict_wave(rt, dt: float, cell: float, horizon: float, clip=None) -> RasterResult:
    """First and last time step at which some grid cell of the polygon satisfies all four edges.

    A cell is marked at step k when max(fronts, 0) <= k dt <= min(backs).  The
    per-cell step range is computed directly, which is the same as stepping.
    """
    if dt <= 0 or cell <= 0:
        raise ValueError("rasterize_conflict_wave: dt and cell must be positive")
    X, Y, clipped = _raster_points(rt.polygon, cell, clip)
    if len(X) == 0:
        return RasterResult(None, None, 0, clipped)
    lo = np.maximum(np.maximum(rt.own_front.time_many(X, Y), rt.intr_front.time_many(X, Y)), 0.0)
    hi = np.minimum(rt.own_back.time_many(X, Y), rt.intr_back.time_many(X, Y))
    k_lo = np.ceil(lo / dt - 1e-9)
    k_hi = np.floor(np.minimum(hi, horizon) / dt + 1e-9)
    mark = k_lo <= k_hi
    if not mark.any():
        return RasterResult(None, None, 0, clipped)
    first = float(k_lo[mark].min() * dt)
    last = float(k_hi[mark].max() * dt)
    return RasterResult(first, min(last, horizon), int(mark.sum()), clipped)
