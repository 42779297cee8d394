"""Planar primitives: branch-aware angles, frame transforms, convex half-plane regions."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi
CUT_SNAP = 1e-12
DEDUP_TOL = 1e-9


class Point2(NamedTuple):
    x: float
    y: float


class Branch(enum.Enum):
    """Principal interval for a two-argument arctangent."""

    PI = "(-pi,pi]"
    TWO_PI = "[0,2pi)"
    HALF = "[-pi/2,3pi/2)"


def atan2_branch(y: float, x: float, branch: Branch = Branch.PI) -> float:
    """Angle of (x, y) in the requested interval.

    Values within 1e-12 of the cut snap to the closed side: pi for (-pi,pi],
    0 for [0,2pi), -pi/2 for [-pi/2,3pi/2).
    """
    if x == 0.0 and y == 0.0:
        raise ValueError("atan2_branch: angle of the origin is undefined")
    a = math.atan2(y, x)
    if branch is Branch.PI:
        if a <= -math.pi + CUT_SNAP:
            a = math.pi
    elif branch is Branch.TWO_PI:
        if a < 0.0:
            a += TWO_PI
        if a >= TWO_PI - CUT_SNAP:
            a = 0.0
    elif branch is Branch.HALF:
        if a < -0.5 * math.pi:
            a += TWO_PI
        if a >= 1.5 * math.pi - CUT_SNAP:
            a = -0.5 * math.pi
    else:  # pragma: no cover
        raise ValueError(f"unknown branch {branch!r}")
    return a


def normalize_angle(a: float) -> float:
    """Map an angle into (-pi, pi]."""
    a = math.fmod(a, TWO_PI)
    if a <= -math.pi:
        a += TWO_PI
    elif a > math.pi:
        a -= TWO_PI
    return a


@dataclass(frozen=True)
class Pose:
    position: Point2
    heading: float

    def __post_init__(self):
        object.__setattr__(self, "position", Point2(*map(float, self.position)))
        object.__setattr__(self, "heading", normalize_angle(float(self.heading)))


def to_local(p: Sequence[float], frame: Pose) -> Point2:
    dx = p[0] - frame.position.x
    dy = p[1] - frame.position.y
    c, s = math.cos(frame.heading), math.sin(frame.heading)
    return Point2(dx * c + dy * s, -dx * s + dy * c)


def to_global(p: Sequence[float], frame: Pose) -> Point2:
    c, s = math.cos(frame.heading), math.sin(frame.heading)
    return Point2(
        frame.position.x + p[0] * c - p[1] * s,
        frame.position.y + p[0] * s + p[1] * c,
    )


class _Straight:
    """Sentinel radius for points on the initial heading line (y = 0)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "STRAIGHT"


STRAIGHT = _Straight()


def chord_params(p: Sequence[float]):
    """Approach angle 2*atan2(y, x) and radius (x^2+y^2)/(2y) of the arc from the origin to p.

    The radius is ``STRAIGHT`` when y == 0.
    """
    x, y = float(p[0]), float(p[1])
    if x == 0.0 and y == 0.0:
        raise ValueError("chord_params: point coincides with the start")
    theta_m = 2.0 * atan2_branch(y, x, Branch.PI)
    r_m = STRAIGHT if y == 0.0 else (x * x + y * y) / (2.0 * y)
    return theta_m, r_m


# --------------------------------------------------------------------------
# Half-planes and convex regions


@dataclass(frozen=True)
class HalfPlane:
    """a1*x + a2*y <= b"""

    a1: float
    a2: float
    b: float

    def __post_init__(self):
        if self.a1 == 0.0 and self.a2 == 0.0:
            raise ValueError("HalfPlane: zero normal")

    def normalized(self) -> "HalfPlane":
        n = math.hypot(self.a1, self.a2)
        return HalfPlane(self.a1 / n, self.a2 / n, self.b / n)

    def value(self, x, y):
        return self.a1 * x + self.a2 * y - self.b

    def contains(self, p, tol: float = 0.0) -> bool:
        return self.value(p[0], p[1]) <= tol

    def shifted(self, pad: float) -> "HalfPlane":
        """Move the boundary outward by ``pad`` (distance units)."""
        h = self.normalized()
        return HalfPlane(h.a1, h.a2, h.b + pad)

    @staticmethod
    def left_of(point, direction) -> "HalfPlane":
        """Points to the left of (or on) the directed line through ``point``."""
        dx, dy = direction
        # cross(d, p - q) >= 0  <=>  dy*x - dx*y <= dy*qx - dx*qy
        return HalfPlane(dy, -dx, dy * point[0] - dx * point[1])

    @staticmethod
    def right_of(point, direction) -> "HalfPlane":
        dx, dy = direction
        return HalfPlane(-dy, dx, -dy * point[0] + dx * point[1])


class EmptyRegionError(ValueError):
    pass


def _scale_of(hps: Sequence[HalfPlane]) -> float:
    return max([1.0] + [abs(h.b) for h in hps])


def _clip(poly: list, h: HalfPlane) -> list:
    """Sutherland-Hodgman clip of a convex polygon by one half-plane."""
    out = []
    n = len(poly)
    if n == 0:
        return out
    vals = [h.a1 * p[0] + h.a2 * p[1] - h.b for p in poly]
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        vp, vq = vals[i], vals[(i + 1) % n]
        if vp <= 0.0:
            out.append(p)
        if (vp < 0.0 < vq) or (vq < 0.0 < vp):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _area(poly) -> float:
    a = 0.0
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        a += x1 * y2 - x2 * y1
    return 0.5 * a


def _dedup(hps: Sequence[HalfPlane]) -> list:
    """Keep the tightest half-plane per unit normal direction."""
    kept: list = []
    for h in sorted((h.normalized() for h in hps), key=lambda h: (h.a1, h.a2, h.b)):
        for i, k in enumerate(kept):
            if abs(k.a1 - h.a1) < DEDUP_TOL and abs(k.a2 - h.a2) < DEDUP_TOL:
                if h.b < k.b:
                    kept[i] = h
                break
        else:
            kept.append(h)
    return kept


@dataclass(frozen=True)
class ConvexRegion:
    """Intersection of half-planes with a nonempty interior, possibly unbounded."""

    halfplanes: tuple
    label: str | None = None
    bounded: bool = True
    _box_poly: tuple = field(default=(), repr=False, compare=False)
    _box: float = field(default=0.0, repr=False, compare=False)

    def contains(self, p, tol: float = 1e-9) -> bool:
        return all(h.value(p[0], p[1]) <= tol for h in self.halfplanes)

    def contains_many(self, xs, ys, tol: float = 1e-9) -> np.ndarray:
        ok = np.ones(np.shape(xs), dtype=bool)
        for h in self.halfplanes:
            ok &= h.a1 * xs + h.a2 * ys - h.b <= tol
        return ok

    def with_label(self, label) -> "ConvexRegion":
        return ConvexRegion(self.halfplanes, label, self.bounded, self._box_poly, self._box)

    def vertices(self):
        return polygon_vertices(self)[0]

    def centroid(self) -> Point2:
        verts, rays = polygon_vertices(self)
        pts = list(verts)
        for o, ang in rays:
            pts.append((o[0] + math.cos(ang), o[1] + math.sin(ang)))
        if not pts:
            pts = [self._box_poly[0]]
        return Point2(sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))


def make_region(hps: Sequence[HalfPlane], label=None, box: float | None = None):
    """Build a ConvexRegion, pruning redundant half-planes; None if the interior is empty."""
    hps = _dedup(hps)
    if not hps:
        raise ValueError("make_region: need at least one half-plane")
    scale = _scale_of(hps)
    box = box if box is not None else 1e6 * scale
    poly = [(-box, -box), (box, -box), (box, box), (-box, box)]
    for h in hps:
        poly = _clip(poly, h)
        if not poly:
            return None
    if _area(poly) <= 1e-13 * scale * scale:
        return None
    tol = 1e-9 * box
    active = []
    for h in hps:
        n = len(poly)
        for i in range(n):
            p, q = poly[i], poly[(i + 1) % n]
            if (
                abs(h.value(*p)) <= tol
                and abs(h.value(*q)) <= tol
                and math.dist(p, q) > 1e-12 * box
            ):
                active.append(h)
                break
    on_box = any(max(abs(p[0]), abs(p[1])) >= box * (1 - 1e-9) for p in poly)
    return ConvexRegion(tuple(active), label, not on_box, tuple(poly), box)


def region_from_box(xmin, xmax, ymin, ymax, label=None) -> ConvexRegion:
    return make_region(
        [HalfPlane(-1, 0, -xmin), HalfPlane(1, 0, xmax), HalfPlane(0, -1, -ymin), HalfPlane(0, 1, ymax)],
        label,
    )


def polygon_intersect(a: ConvexRegion, b: ConvexRegion):
    """Intersection of two convex regions, or None when the interior is empty."""
    hps = sorted(a.halfplanes + b.halfplanes, key=lambda h: (h.a1, h.a2, h.b))
    return make_region(hps, a.label if a.label == b.label else None)


def polygon_vertices(r: ConvexRegion):
    """Counterclockwise vertices plus boundary rays ``(origin, angle)`` for unbounded regions."""
    if r is None or not r._box_poly:
        raise EmptyRegionError("polygon_vertices: empty region")
    poly = list(r._box_poly)
    box = r._box
    n = len(poly)
    tol = 1e-9 * box

    def on_box(p):
        return max(abs(p[0]), abs(p[1])) >= box * (1 - 1e-9)

    def line_of(p, q):
        return min(r.halfplanes, key=lambda h: abs(h.value(*p)) + abs(h.value(*q)))

    verts = _merge_close(
        [Point2(*p) for p in poly if not on_box(p)],
        1e-9 * max(1.0, _scale_of(r.halfplanes)),
    )
    rays = []
    if r.bounded:
        return verts, rays
    if verts:
        for i in range(n):
            p, q = poly[i], poly[(i + 1) % n]
            if on_box(p) == on_box(q):
                continue
            inner, outer = (q, p) if on_box(p) else (p, q)
            h = line_of(inner, outer)
            if abs(h.value(*inner)) > tol or abs(h.value(*outer)) > tol:
                continue
            d = (outer[0] - inner[0], outer[1] - inner[1])
            rays.append((_nearest_vertex(inner, verts), math.atan2(d[1], d[0])))
        return verts, rays
    # No vertices: the boundary consists of whole lines.
    seen = []
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        h = line_of(p, q)
        if abs(h.value(*p)) <= tol and abs(h.value(*q)) <= tol and h not in seen:
            seen.append(h)
            o = Point2(*_foot_on_line(h))
            ang = math.atan2(h.a1, -h.a2)
            rays.append((o, ang))
            rays.append((o, normalize_angle(ang + math.pi)))
    return verts, rays


def _merge_close(verts, tol):
    out = []
    for v in verts:
        if not out or math.dist(out[-1], v) > tol:
            out.append(v)
    if len(out) > 1 and math.dist(out[0], out[-1]) <= tol:
        out.pop()
    return out


def _nearest_vertex(p, verts):
    return min(verts, key=lambda v: math.dist(v, p))


def _foot_on_line(h: HalfPlane):
    h = h.normalized()
    return (h.a1 * h.b, h.a2 * h.b)


def region_edges(r: ConvexRegion):
    """Boundary pieces as ``(start, direction, length)``; length is inf for rays."""
    verts, rays = polygon_vertices(r)
    edges = []
    if r.bounded:
        n = len(verts)
        for i in range(n):
            p, q = verts[i], verts[(i + 1) % n]
            L = math.dist(p, q)
            if L > 0:
                edges.append((p, ((q[0] - p[0]) / L, (q[1] - p[1]) / L), L))
        return edges
    # Unbounded: boundary chain of segments between consecutive vertices, plus rays.
    chain = _boundary_chain(r, verts, rays)
    for p, q in chain:
        L = math.dist(p, q)
        if L > 0:
            edges.append((p, ((q[0] - p[0]) / L, (q[1] - p[1]) / L), L))
    for o, ang in rays:
        edges.append((o, (math.cos(ang), math.sin(ang)), math.inf))
    return edges


def _boundary_chain(r, verts, rays):
    """Finite boundary segments of an unbounded region."""
    segs = []
    n = len(verts)
    tol = 1e-9 * r._box
    for i in range(n - 1 if n > 1 else 0):
        p, q = verts[i], verts[i + 1]
        m = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
        if any(abs(h.value(*m)) <= tol for h in r.halfplanes):
            segs.append((p, q))
    if n > 2:
        p, q = verts[-1], verts[0]
        m = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
        if any(abs(h.value(*m)) <= tol for h in r.halfplanes):
            segs.append((p, q))
    return segs


def same_point_set(a: ConvexRegion, b: ConvexRegion, tol: float = 1e-9) -> bool:
    va, ra = polygon_vertices(a)
    vb, rb = polygon_vertices(b)
    if len(va) != len(vb) or len(ra) != len(rb):
        return False
    for v in va:
        if not any(math.dist(v, w) <= tol * max(1.0, abs(v[0]), abs(v[1])) for w in vb):
            return False
    angs_a = sorted(round(x[1], 7) for x in ra)
    angs_b = sorted(round(x[1], 7) for x in rb)
    return angs_a == angs_b


def transform_region(r: ConvexRegion, frame: Pose, mirror: bool = False, label=None) -> ConvexRegion:
    """Map a region given in ``frame``'s local coordinates to world coordinates.

    ``mirror`` first reflects local y -> -y.
    """
    c, s = math.cos(frame.heading), math.sin(frame.heading)
    p0 = frame.position
    out = []
    for h in r.halfplanes:
        a1, a2 = h.a1, (-h.a2 if mirror else h.a2)
        w1, w2 = a1 * c - a2 * s, a1 * s + a2 * c
        out.append(HalfPlane(w1, w2, h.b + w1 * p0.x + w2 * p0.y))
    return make_region(out, label if label is not None else r.label)
