"""Earliest and latest collision time inside each conflict polygon, and for a whole encounter.

Inside a polygon the possible collision times at p are
``[max(tau_f^o, tau_f^i, 0), min(tau_b^o, tau_b^i)]``.  Extremes over the
polygon are attained on a finite candidate set (vertices, locus/edge crossings,
perpendicular feet, triple points, parallel-gradient points, apexes), with a
separate asymptotic test for unbounded polygons.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import CollisionInterval
from .geometry import Point2, polygon_vertices, region_edges
from .loci import lagrange_points, locus_crossings, triple_points
from .partition import RegionTiming, TilingParams, conflict_cover
from .waves import ZERO_WAVE, WaveEdge

FEAS_TOL = 1e-9
FAR_FACTORS = (1e6, 1e7)
N_DIRECTIONS = 720


class CPKind(enum.Enum):
    WAVE_BIRTH = "wave_birth"
    POLYGON_VERTEX = "polygon_vertex"
    LOCUS_EDGE_CROSSING = "locus_edge_crossing"
    TANGENCY_POINT = "tangency_point"
    TRIPLE_POINT = "triple_point"
    LAGRANGE_POINT = "lagrange_point"
    APEX = "apex"
    RAY_LIMIT = "ray_limit"


@dataclass(frozen=True)
class CriticalPoint:
    location: Point2 | None
    kind: CPKind
    direction: float | None = None


# --------------------------------------------------------------------------
# Pointwise evaluation


def _canonical(edges):
    out = []
    for e in sorted(edges, key=WaveEdge.key):
        if not out or out[-1].key() != e.key():
            out.append(e)
    return out


class _Problem:
    def __init__(self, rt: RegionTiming):
        self.rt = rt
        self.fronts = _canonical([rt.own_front, rt.intr_front])
        self.backs = _canonical([rt.own_back, rt.intr_back])
        self.funcs = _canonical(self.fronts + self.backs) + [ZERO_WAVE]
        self.verts, self.rays = polygon_vertices(rt.polygon)
        self.edges = region_edges(rt.polygon)
        pts = list(self.verts) + [o for o, _ in self.rays]
        pts += [e.center for e in self.funcs if e.circular]
        ext = max([1.0] + [abs(c) for p in pts for c in p])
        self.scale = ext

    def interval(self, p):
        lo = max([0.0] + [e.time(p) for e in self.fronts])
        hi = min(e.time(p) for e in self.backs)
        if lo <= hi + FEAS_TOL * max(1.0, abs(hi), abs(lo)):
            return lo, max(hi, lo)
        return None

    def intervals_many(self, xs, ys):
        lo = np.zeros_like(xs)
        for e in self.fronts:
            lo = np.maximum(lo, e.time_many(xs, ys))
        hi = np.full_like(xs, np.inf)
        for e in self.backs:
            hi = np.minimum(hi, e.time_many(xs, ys))
        ok = lo <= hi + FEAS_TOL * np.maximum(1.0, np.maximum(np.abs(hi), np.abs(lo)))
        return lo, hi, ok

    def inside(self, p) -> bool:
        return self.rt.polygon.contains(p, FEAS_TOL * self.scale)


def point_interval(rt: RegionTiming, p):
    """(start, end) of the possible collision times at ``p``, or None."""
    return _Problem(rt).interval(p)


# --------------------------------------------------------------------------
# Candidates


def _candidates(prob: _Problem):
    out = []
    add = out.append
    for v in prob.verts:
        add(CriticalPoint(Point2(*v), CPKind.POLYGON_VERTEX))
    for o, _ in prob.rays:
        add(CriticalPoint(Point2(*o), CPKind.POLYGON_VERTEX))
    for e in prob.funcs:
        if e.circular:
            add(CriticalPoint(e.center, CPKind.APEX))
    # both fronts meet first on their gradient-parallel line
    if len(prob.fronts) == 2:
        for p in lagrange_points(*prob.fronts):
            add(CriticalPoint(p, CPKind.WAVE_BIRTH))
    for start, d, length in prob.edges:
        for e in prob.funcs:
            if e.circular:
                u = (e.center.x - start[0]) * d[0] + (e.center.y - start[1]) * d[1]
                u = min(max(u, 0.0), length)
                add(CriticalPoint(Point2(start[0] + u * d[0], start[1] + u * d[1]), CPKind.TANGENCY_POINT))
        for f, g in itertools.combinations(prob.funcs, 2):
            for p in locus_crossings(f, g, start, d, 0.0, length):
                add(CriticalPoint(p, CPKind.LOCUS_EDGE_CROSSING))
    for f, g in itertools.combinations(prob.funcs, 2):
        for p in lagrange_points(f, g):
            add(CriticalPoint(p, CPKind.LAGRANGE_POINT))
    t_bound = 1e8 * prob.scale / min(e.s for e in prob.funcs)
    for f, g, h in itertools.combinations(prob.funcs, 3):
        for p in triple_points(f, g, h, t_bound):
            add(CriticalPoint(p, CPKind.TRIPLE_POINT))
    return out


def critical_points(rt: RegionTiming) -> list:
    """Finite candidate set inside the polygon plus one ray-limit entry per recession ray."""
    prob = _Problem(rt)
    pts = [c for c in _candidates(prob) if prob.inside(c.location)]
    pts += [CriticalPoint(None, CPKind.RAY_LIMIT, ang) for _, ang in prob.rays]
    return pts


# --------------------------------------------------------------------------
# Unbounded polygons


def _slope(e: WaveEdge, w) -> float:
    if e.circular:
        return 1.0 / e.s
    return (e.n[0] * w[0] + e.n[1] * w[1]) / e.s


def _equal_slope_angles(prob: _Problem):
    """Directions along which a front and a back grow at the same asymptotic rate."""
    angs = []
    for f in prob.fronts + [ZERO_WAVE]:
        for b in prob.backs:
            pair = [f, b]
            circ = [e for e in pair if e.circular]
            lin = [e for e in pair if not e.circular]
            if len(circ) == 2:
                if abs(f.s - b.s) < 1e-12:
                    dx, dy = b.center.x - f.center.x, b.center.y - f.center.y
                    L = math.hypot(dx, dy)
                    k = f.c - b.c
                    if L > 0 and abs(k) <= L:
                        base = math.atan2(dy, dx)
                        angs += [base + math.acos(k / L), base - math.acos(k / L)]
            elif len(circ) == 1:
                c, l = circ[0], lin[0]
                nl = math.hypot(*l.n)
                if nl > 0:
                    v = l.s / (c.s * nl)
                    if abs(v) <= 1:
                        base = math.atan2(l.n[1], l.n[0])
                        angs += [base + math.acos(v), base - math.acos(v)]
            else:
                gx = f.n[0] / f.s - b.n[0] / b.s
                gy = f.n[1] / f.s - b.n[1] / b.s
                if math.hypot(gx, gy) > 0:
                    base = math.atan2(gy, gx)
                    angs += [base + math.pi / 2, base - math.pi / 2]
    return angs


def _cone_directions(prob: _Problem):
    hps = prob.rt.polygon.halfplanes
    angs = list(np.linspace(-math.pi, math.pi, N_DIRECTIONS, endpoint=False))
    angs += [a for _, a in prob.rays]
    for a in _equal_slope_angles(prob):
        angs += [a, a + 1e-6, a - 1e-6]
    out = []
    for a in angs:
        w = (math.cos(a), math.sin(a))
        if all(h.a1 * w[0] + h.a2 * w[1] <= 1e-12 for h in hps):
            out.append(w)
    return out


def _unbounded_overlap(prob: _Problem, anchors) -> bool:
    if prob.rt.polygon.bounded:
        return False
    dirs = _cone_directions(prob)
    if not dirs:
        return False
    for w in dirs:
        lo_slope = max([0.0] + [_slope(e, w) for e in prob.fronts])
        hi_slope = min(_slope(e, w) for e in prob.backs)
        if hi_slope > lo_slope + 1e-12 * max(1.0, abs(hi_slope)):
            return True
    W = np.array(dirs)
    A = np.array(anchors) if anchors else np.zeros((0, 2))
    if len(A) == 0:
        return False
    for k in FAR_FACTORS:
        R = k * prob.scale
        xs = (A[:, None, 0] + R * W[None, :, 0]).ravel()
        ys = (A[:, None, 1] + R * W[None, :, 1]).ravel()
        _, _, ok = prob.intervals_many(xs, ys)
        if k == FAR_FACTORS[0]:
            persist = ok
        else:
            persist = persist & ok
    return bool(np.any(persist))


# --------------------------------------------------------------------------
# Region solvers


@dataclass(frozen=True)
class RegionResult:
    timing: RegionTiming
    interval: CollisionInterval
    method: str
    argmin: Point2 | None = None
    argmax: Point2 | None = None


def solve_region(rt: RegionTiming, detail: bool = False):
    """Earliest/latest collision time inside the polygon (critical-point method)."""
    prob = _Problem(rt)
    best_lo, best_hi = math.inf, -math.inf
    arg_lo = arg_hi = None
    feasible = []
    for c in _candidates(prob):
        p = c.location
        if not prob.inside(p):
            continue
        iv = prob.interval(p)
        if iv is None:
            continue
        feasible.append(p)
        if iv[0] < best_lo:
            best_lo, arg_lo = iv[0], p
        if iv[1] > best_hi:
            best_hi, arg_hi = iv[1], p
    anchors = feasible + list(prob.verts) + [o for o, _ in prob.rays]
    if _unbounded_overlap(prob, anchors):
        if not feasible:
            best_lo = _far_earliest(prob, anchors)
        best_hi = math.inf
    if best_lo == math.inf:
        res = CollisionInterval.none()
    else:
        res = CollisionInterval(float(best_lo), float(best_hi))
    if detail:
        return RegionResult(rt, res, "critical", arg_lo, arg_hi)
    return res


def _far_earliest(prob: _Problem, anchors):
    """Earliest start over far sample points, used when no finite candidate is feasible."""
    dirs = _cone_directions(prob)
    best = math.inf
    for k in FAR_FACTORS:
        R = k * prob.scale
        for a in anchors:
            for w in dirs:
                iv = prob.interval((a[0] + R * w[0], a[1] + R * w[1]))
                if iv is not None:
                    best = min(best, iv[0])
    return best


# --------------------------------------------------------------------------
# All-linear regions: 3-variable LP by vertex enumeration


def _lp_rows(rt: RegionTiming):
    rows, rhs = [], []
    for h in rt.polygon.halfplanes:
        rows.append((h.a1, h.a2, 0.0))
        rhs.append(h.b)
    for e in (rt.own_front, rt.intr_front):
        rows.append((e.n[0], e.n[1], -e.s))
        rhs.append(e.c)
    for e in (rt.own_back, rt.intr_back):
        rows.append((-e.n[0], -e.n[1], e.s))
        rhs.append(-e.c)
    rows.append((0.0, 0.0, -1.0))
    rhs.append(0.0)
    return np.array(rows, float), np.array(rhs, float)


def _enumerate_vertices(A, b, tol, scale):
    m = len(A)
    idx = np.array(list(itertools.combinations(range(m), 3)))
    M = A[idx]
    det = np.linalg.det(M)
    good = np.abs(det) > 1e-12
    if not good.any():
        return np.zeros((0, 3))
    sol = np.linalg.solve(M[good], b[idx[good]][..., None])[..., 0]
    ok = np.all(sol @ A.T <= b + tol * scale, axis=1)
    return sol[ok]


def _direction_feasible(A, tol=1e-9) -> bool:
    """Is there (dx, dy) with A[:, :2] . d + A[:, 2] <= 0 for all rows (t growing)?"""
    G, h = A[:, :2], -A[:, 2]
    big = 1e6 * max(1.0, np.abs(h).max()) / max(1e-12, min(np.hypot(G[:, 0], G[:, 1])[np.hypot(G[:, 0], G[:, 1]) > 0], default=1.0))
    box = np.array([[1, 0], [-1, 0], [0, 1], [0, -1]], float)
    G2 = np.vstack([G, box])
    h2 = np.concatenate([h, np.full(4, big)])
    for i, j in itertools.combinations(range(len(G2)), 2):
        M = G2[[i, j]]
        if abs(np.linalg.det(M)) < 1e-14:
            continue
        d = np.linalg.solve(M, h2[[i, j]])
        if np.all(G2 @ d <= h2 + tol * max(1.0, np.abs(h2).max())):
            return True
    return False


def solve_linear_region(rt: RegionTiming) -> CollisionInterval:
    """Min and max of t over {(x, y, t): polygon, four linear edges, t >= 0}."""
    for e in rt.edges:
        if e.circular:
            raise ValueError("solve_linear_region needs four linear edges")
    A, b = _lp_rows(rt)
    verts, rays = polygon_vertices(rt.polygon)
    pts = list(verts) + [o for o, _ in rays]
    L = max([1.0] + [abs(c) for p in pts for c in p] + [abs(e.c) for e in rt.edges])
    s_min = min(e.s for e in rt.edges)
    M, T = 1e7 * L, 1e7 * L / s_min
    # bounding box keeps the enumerated polytope bounded
    ref = np.mean(np.array(pts), axis=0) if pts else np.zeros(2)
    box_rows = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1]], float)
    box_rhs = np.array([ref[0] + M, -(ref[0] - M), ref[1] + M, -(ref[1] - M), T])
    Ab, bb = np.vstack([A, box_rows]), np.concatenate([b, box_rhs])
    V = _enumerate_vertices(Ab, bb, FEAS_TOL, max(1.0, float(np.abs(b).max())))
    if len(V) == 0:
        return CollisionInterval.none()
    t_lo, t_hi = float(V[:, 2].min()), float(V[:, 2].max())
    if _direction_feasible(A) or t_hi >= 0.5 * T:
        t_hi = math.inf
    return CollisionInterval(max(t_lo, 0.0), t_hi)


def all_linear(rt: RegionTiming) -> bool:
    return not any(e.circular for e in rt.edges)


# --------------------------------------------------------------------------
# Encounter


@dataclass
class EncounterResult:
    interval: CollisionInterval
    table: list = field(default_factory=list)

    @property
    def safe(self) -> bool:
        return self.interval.empty


def union_interval(intervals) -> CollisionInterval:
    live = [iv for iv in intervals if not iv.empty]
    if not live:
        return CollisionInterval.none()
    return CollisionInterval(min(iv.t_e for iv in live), max(iv.t_l for iv in live))


def encounter_interval(own, intr, tiling: TilingParams | None = None, cover=None) -> EncounterResult:
    """Union over the conflict cover of the per-polygon collision intervals."""
    cover = cover if cover is not None else conflict_cover(own, intr, tiling)
    table = []
    for rt in cover:
        if all_linear(rt):
            table.append(RegionResult(rt, solve_linear_region(rt), "lp"))
        else:
            table.append(solve_region(rt, detail=True))
    return EncounterResult(union_interval(r.interval for r in table), table)
