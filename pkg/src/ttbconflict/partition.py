"""Convex cover of a vehicle's envelope with wave edges attached, and of the conflict area.

Every point of the envelope is reached by a shortest path of one of three
kinds (pure arc, minimum-radius tangent, minimum-bearing tangent) and a longest
path of one of three kinds.  For each kind we tile the set of points where it
is the optimizer, overapproximate every tile with a convex polygon and attach
the wave edge that bounds the path length there.  Cells are pairwise
intersections of a front polygon and a back polygon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bounds import REGION_OF_PIECES, _LeftPoint, _left_args, _max_pieces, _min_pieces, region_label
from .geometry import HalfPlane, make_region, polygon_intersect, transform_region
from .kinematics import BOUNDARY_TOL, Mode, TurnSpec, in_envelope, turn_point
from .waves import Role, WaveEdge, circular_tile_waves, linear_wave, sinc, wedge_back, wedge_front

PAD_REL = 1e-6
MIN_SPAN = 1e-4


@dataclass(frozen=True)
class TilingParams:
    """Tile resolution: angular span cap, radial bands and allowed sinc-bound gap."""

    max_span: float = math.pi / 8
    n_r: int = 1
    max_gap: float = 0.02

    def __post_init__(self):
        if not (self.max_span > 0 and self.n_r >= 1 and self.max_gap > 0):
            raise ValueError("TilingParams require max_span > 0, n_r >= 1, max_gap > 0")

    @classmethod
    def uniform(cls, n: int, n_r: int = 1) -> "TilingParams":
        """Span pi/n with the gap criterion switched off."""
        return cls(math.pi / n, n_r, math.inf)


def sinc_gap(th1: float, th2: float) -> float:
    """Relative gap between the upper and lower arc-length bounds of a tile."""
    return sinc(th1 / 2) / sinc(th2 / 2) - 1.0


def split_angles(lo: float, hi: float, max_span: float, max_gap: float = math.inf) -> list:
    """Break [lo, hi] into consecutive pieces meeting the span and gap limits."""
    if hi < lo:
        raise ValueError("split_angles: empty interval")
    if hi - lo <= 1e-15:
        return [(lo, hi)]
    out = []
    a = lo
    while a < hi - 1e-15:
        b = min(hi, a + max_span)
        if math.isfinite(max_gap) and sinc_gap(a, b) > max_gap:
            # largest b with gap <= max_gap (gap grows with b)
            g_lo, g_hi = a, b
            for _ in range(60):
                mid = 0.5 * (g_lo + g_hi)
                if sinc_gap(a, mid) > max_gap:
                    g_hi = mid
                else:
                    g_lo = mid
            b = max(g_lo, a + MIN_SPAN)
            b = min(b, hi)
        out.append((a, b))
        a = b
    out[-1] = (out[-1][0], hi)
    return out


def _pad(hps, pad):
    return [h.shifted(pad) for h in hps]


# --------------------------------------------------------------------------
# Domain polygons (left-turn local frame)


def turn_tile(r1: float, r2: float, th1: float, th2: float, pad: float = 0.0):
    """Five half-plane polygon around the arc points with radius in [r1, r2], bearing in [th1, th2]."""
    if not (0 < r1 <= r2 and 0 <= th1 < th2 and th2 - th1 <= math.pi / 2 + 1e-12):
        raise ValueError("turn_tile requires 0 < r1 <= r2, 0 <= th1 < th2, th2 - th1 <= pi/2")
    nu, iota = turn_point(r1, th1), turn_point(r1, th2)
    ups, omega = turn_point(r2, th1), turn_point(r2, th2)
    h1 = (math.cos(th1 / 2), math.sin(th1 / 2))
    h2 = (math.cos(th2 / 2), math.sin(th2 / 2))
    hps = [
        HalfPlane.left_of(nu, h1),
        HalfPlane.right_of(iota, h2),
        HalfPlane.right_of(nu, (iota[0] - nu[0], iota[1] - nu[1])),
        HalfPlane.left_of(ups, (math.cos(th1), math.sin(th1))),
        HalfPlane.left_of(omega, (math.cos(th2), math.sin(th2))),
    ]
    return make_region(_pad(hps, pad) if pad else hps)


def wedge_domain(r: float, phi1: float, phi2: float, pad: float = 0.0):
    """Wedge at r*(sin phi1, 1 - cos phi1) between the headings phi1 and phi2.

    Contains every tangent ray leaving the radius-r circle with a heading in [phi1, phi2].
    """
    if not (0 <= phi1 <= phi2 and phi2 - phi1 < math.pi):
        raise ValueError("wedge_domain requires 0 <= phi1 <= phi2 < phi1 + pi")
    w = turn_point(r, phi1)
    mid = 0.5 * (phi1 + phi2)
    hps = [
        HalfPlane.left_of(w, (math.cos(phi1), math.sin(phi1))),
        HalfPlane.right_of(w, (math.cos(phi2), math.sin(phi2))),
        # forward of the apex; redundant unless the wedge collapses to a ray
        HalfPlane.left_of(w, (math.sin(mid), -math.cos(mid))),
    ]
    return make_region(_pad(hps, pad) if pad else hps)


def strip_domain(r1: float, r2: float, theta: float, pad: float = 0.0):
    """Points r*(sin, 1 - cos)(theta) + l*(cos, sin)(theta) with r in [r1, r2], l >= 0."""
    u = (math.sin(theta), 1.0 - math.cos(theta))
    d = (math.cos(theta), math.sin(theta))
    a, b = turn_point(r1, theta), turn_point(r2, theta)
    hps = [
        HalfPlane.right_of(a, d),
        HalfPlane.left_of(b, d),
        HalfPlane.left_of(a, u),
    ]
    return make_region(_pad(hps, pad) if pad else hps)


# --------------------------------------------------------------------------
# Vehicle cover


@dataclass(frozen=True)
class Piece:
    """One optimizer kind over a parameter sub-range, with its polygon and bounding edge."""

    role: Role
    kind: int  # 1: boundary radius tangent, 2: boundary bearing tangent, 3: pure arc
    lo: float
    hi: float
    region: object  # ConvexRegion in the left-turn local frame
    edge: WaveEdge  # in the left-turn local frame

    def valid_at(self, q: _LeftPoint) -> bool:
        """Whether ``q`` belongs to the exact set this piece was built for."""
        tol = 1e-9
        if self.role is Role.FRONT:
            kinds = _min_kinds(q)
            r = q.ra
        else:
            kinds = _max_kinds(q)
            r = q.rb
        if self.kind not in kinds:
            return False
        if self.kind == 2:
            return True
        if self.kind == 3:
            return self.lo - tol <= q.theta_m <= self.hi + tol
        return self.lo - tol <= q.theta(r) <= self.hi + tol


def _min_kinds(q):
    return {i for i, g, _ in _min_pieces(q) if g()}


def _max_kinds(q):
    return {i for i, g, _ in _max_pieces(q) if g()}


def _left_params(spec: TurnSpec):
    if spec.mode is Mode.LEFT:
        return spec.r_alpha, spec.r_beta, spec.theta_alpha, spec.theta_beta, False
    if spec.mode is Mode.RIGHT:
        return -spec.r_beta, -spec.r_alpha, -spec.theta_beta, -spec.theta_alpha, True
    raise NotImplementedError("convex covers are not available for either-direction turns")


def _pieces(spec: TurnSpec, tiling: TilingParams):
    ra, rb, ta, tb, _ = _left_params(spec)
    pad = PAD_REL * max(1.0, rb)
    tile_span = min(tiling.max_span, math.pi / 2)
    bands = [(ra + (rb - ra) * i / tiling.n_r, ra + (rb - ra) * (i + 1) / tiling.n_r) for i in range(tiling.n_r)]
    fronts, backs = [], []

    def tiles(hi_angle, role):
        out = []
        for a, b in split_angles(0.0, hi_angle, tile_span, tiling.max_gap):
            f, k = circular_tile_waves(a, b, spec.s_alpha, spec.s_beta)
            edge = f if role is Role.FRONT else k
            for r1, r2 in bands:
                reg = turn_tile(r1, r2, a, b, pad)
                if reg is not None:
                    out.append(Piece(role, 3, a, b, reg, edge))
        return out

    fronts += tiles(ta, Role.FRONT)
    backs += tiles(tb, Role.BACK)
    wedge_span = min(tiling.max_span, math.pi / 2)
    for a, b in split_angles(ta, tb, wedge_span):
        reg = wedge_domain(ra, a, b, pad)
        if reg is not None:
            fronts.append(Piece(Role.FRONT, 1, a, b, reg, wedge_front(ra, a, spec.s_beta)))
        reg = wedge_domain(rb, a, b, pad)
        if reg is not None:
            backs.append(Piece(Role.BACK, 1, a, b, reg, wedge_back(rb, b, spec.s_alpha)))
    reg = strip_domain(ra, rb, ta, pad)
    if reg is not None:
        fronts.append(Piece(Role.FRONT, 2, ta, ta, reg, linear_wave(ta, spec.s_beta, Role.FRONT)))
    reg = strip_domain(ra, rb, tb, pad)
    if reg is not None:
        backs.append(Piece(Role.BACK, 2, tb, tb, reg, linear_wave(tb, spec.s_alpha, Role.BACK)))
    return fronts, backs


@dataclass(frozen=True)
class CoverCell:
    label: str
    region: object  # world-frame ConvexRegion
    front: WaveEdge  # world frame
    back: WaveEdge
    front_piece: Piece = field(repr=False)
    back_piece: Piece = field(repr=False)

    def valid_at(self, spec: TurnSpec, p) -> bool:
        """Whether both edges are known to bound the exact path lengths at world point ``p``."""
        args = _left_args(spec, p, False)
        if not isinstance(args, tuple) or (args[0] == 0 and args[1] == 0):
            return False
        if not in_envelope(spec, p):
            return False
        q = _LeftPoint(*args, tol=BOUNDARY_TOL * max(1.0, math.hypot(args[0], args[1])))
        return self.front_piece.valid_at(q) and self.back_piece.valid_at(q)


def _compatible(f: Piece, b: Piece) -> bool:
    # a pure-arc shortest path forces a pure-arc longest path; all other pairs occur
    return f.kind != 3 or b.kind == 3


def build_cover(spec: TurnSpec, tiling: TilingParams | None = None) -> list:
    """Labelled world-frame cells whose union contains the envelope."""
    tiling = tiling or TilingParams()
    fronts, backs = _pieces(spec, tiling)
    mirror = _left_params(spec)[4]
    cells = []
    for f in fronts:
        for b in backs:
            if not _compatible(f, b):
                continue
            reg = polygon_intersect(f.region, b.region)
            if reg is None:
                continue
            label = REGION_OF_PIECES[(f.kind, b.kind)]
            world = transform_region(reg, spec.pose, mirror=mirror, label=label)
            if world is None:
                continue
            cells.append(
                CoverCell(
                    label,
                    world,
                    f.edge.transformed(spec.pose, mirror),
                    b.edge.transformed(spec.pose, mirror),
                    f,
                    b,
                )
            )
    return cells


def classify_region(spec: TurnSpec, p) -> str:
    """Region letter from the optimizing strategies at ``p``."""
    lab = region_label(spec, p)
    if lab is None:
        raise ValueError(f"no region label at {tuple(p)}")
    return lab


# --------------------------------------------------------------------------
# Conflict cover


@dataclass(frozen=True)
class RegionTiming:
    polygon: object
    own_front: WaveEdge
    own_back: WaveEdge
    intr_front: WaveEdge
    intr_back: WaveEdge
    own_label: str = ""
    intr_label: str = ""

    @property
    def edges(self):
        return (self.own_front, self.own_back, self.intr_front, self.intr_back)

    def swapped(self) -> "RegionTiming":
        return RegionTiming(
            self.polygon, self.intr_front, self.intr_back, self.own_front, self.own_back,
            self.intr_label, self.own_label,
        )


def conflict_cover(own: TurnSpec, intr: TurnSpec, tiling: TilingParams | None = None,
                   own_cells=None, intr_cells=None) -> list:
    """Pairwise intersections of both vehicles' cells; their union contains the conflict area."""
    tiling = tiling or TilingParams()
    own_cells = own_cells if own_cells is not None else build_cover(own, tiling)
    intr_cells = intr_cells if intr_cells is not None else build_cover(intr, tiling)
    out = []
    for a in own_cells:
        for b in intr_cells:
            reg = polygon_intersect(a.region, b.region)
            if reg is None:
                continue
            out.append(RegionTiming(reg, a.front, a.back, b.front, b.back, a.label, b.label))
    return out


def cover_contains(cells, p, tol: float = 1e-9) -> bool:
    return any(c.region.contains(p, tol) for c in cells)
