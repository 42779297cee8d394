"""Shortest and longest admissible path lengths, arrival windows and pointwise conflict."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import STRAIGHT, chord_params
from .kinematics import (
    BOUNDARY_TOL,
    InfeasibleError,
    Mode,
    TurnSpec,
    angle_for_radius,
    in_envelope,
    path_length,
    radius_for_angle,
)

AGREE_TOL = 1e-6
ANGLE_TOL = 1e-12


class UnreachableError(InfeasibleError):
    pass


@dataclass(frozen=True)
class PointTiming:
    t_e: float
    t_l: float

    def __post_init__(self):
        if not (0 <= self.t_e <= self.t_l):
            raise ValueError(f"PointTiming requires 0 <= t_e <= t_l, got {self.t_e}, {self.t_l}")


@dataclass(frozen=True)
class CollisionInterval:
    t_e: float
    t_l: float
    empty: bool = False

    @classmethod
    def none(cls) -> "CollisionInterval":
        return cls(math.nan, math.nan, True)


# --------------------------------------------------------------------------
# Left-turn pieces.  Each piece is (index, guard, value thunk).


class _LeftPoint:
    """Cached quantities for one point under left-turn bounds."""

    def __init__(self, x, y, ra, rb, ta, tb, tol):
        self.x, self.y = x, y
        self.ra, self.rb, self.ta, self.tb = ra, rb, ta, tb
        self.tol = tol
        self.theta_m, r_m = chord_params((x, y))
        self.r_m = math.inf if r_m is STRAIGHT else r_m
        self.rho2 = x * x + y * y
        self._th = {}

    def outside(self, r) -> bool:
        # x^2 + y^2 > 2 r y  (p outside the radius-r turning circle).  Kept exact:
        # a slack here feeds a clamped square root whose error grows like sqrt(slack).
        if math.isinf(r):
            return self.y < 0 or (self.y == 0 and self.x < 0)
        return self.rho2 > 2 * r * self.y

    def theta(self, r) -> float:
        if r not in self._th:
            if math.isinf(r):
                self._th[r] = math.tau if self.y <= 0 else self.theta_m
            else:
                self._th[r] = angle_for_radius((self.x, self.y), r, check=False)
        return self._th[r]

    def on_arc_band(self) -> bool:
        t = self.tol
        return self.y > 0 and self.ra * (1 - t) - t <= self.r_m <= self.rb * (1 + t) + t

    def length_r(self, r) -> float:
        return path_length((self.x, self.y), self.theta(r), r, check=False)

    def length_theta(self, th) -> float:
        r = radius_for_angle((self.x, self.y), th, check=False)
        return path_length((self.x, self.y), th, r, check=False)

    def arc(self) -> float:
        return self.r_m * self.theta_m


def _min_pieces(q: _LeftPoint):
    t = ANGLE_TOL
    yield 1, lambda: q.outside(q.ra) and q.ta - t <= q.theta(q.ra) <= q.tb + t, lambda: q.length_r(q.ra)

    def g2():
        if not q.outside(q.ra):
            return False
        upper = q.y >= 0 and (q.ra <= q.r_m * (1 + q.tol) + q.tol or q.y == 0) and q.ta < q.theta_m + t
        lower = q.y < 0 and q.theta_m < 0
        return (upper or lower) and q.theta(q.ra) < q.ta + t

    yield 2, g2, lambda: q.length_theta(q.ta)

    def g3():
        if not q.on_arc_band():
            return False
        ref = q.ta if not q.outside(q.ra) else max(q.ta, q.theta(q.ra))
        return q.theta_m <= ref + t

    yield 3, g3, q.arc


def _max_pieces(q: _LeftPoint):
    t = ANGLE_TOL
    yield 1, lambda: q.outside(q.rb) and q.theta(q.rb) <= q.tb + t, lambda: q.length_r(q.rb)

    def g2():
        if q.outside(q.rb) and q.tb < q.theta(q.rb) + t:
            return True
        return q.on_arc_band() and q.tb < q.theta_m + t

    yield 2, g2, lambda: q.length_theta(q.tb)
    yield 3, lambda: q.on_arc_band() and q.theta_m <= q.tb + t, q.arc


def _evaluate(pieces, check_agree: bool):
    chosen = None
    for idx, guard, value in pieces:
        if not guard():
            continue
        v = value()
        if chosen is None:
            chosen = (idx, v)
            if not check_agree:
                break
        elif abs(v - chosen[1]) > AGREE_TOL * max(1.0, abs(v)):
            raise AssertionError(f"overlapping pieces {chosen[0]} and {idx} disagree: {chosen[1]} vs {v}")
    return chosen


# --------------------------------------------------------------------------
# Mode dispatch


def _left_args(spec: TurnSpec, p, local: bool):
    """Reduce any mode to a left-turn evaluation: (x, y, ra, rb, ta, tb) or a straight distance."""
    x, y = p if local else spec.local(p)
    x, y = float(x), float(y)
    if spec.mode is Mode.LEFT:
        return (x, y, spec.r_alpha, spec.r_beta, spec.theta_alpha, spec.theta_beta)
    if spec.mode is Mode.RIGHT:
        return (x, -y, -spec.r_beta, -spec.r_alpha, -spec.theta_beta, -spec.theta_alpha)
    if y > 0:
        return (x, y, spec.r_alpha, math.inf, 0.0, spec.theta_beta)
    if y < 0:
        return (x, -y, -spec.r_beta, math.inf, 0.0, -spec.theta_alpha)
    if x >= 0:
        return x
    return (x, y, spec.r_alpha, math.inf, 0.0, spec.theta_beta)


def _bound(spec, p, local, which, check_agree):
    args = _left_args(spec, p, local)
    if not isinstance(args, tuple):
        return 0, args
    x, y = args[0], args[1]
    if x == 0.0 and y == 0.0:
        return 0, 0.0
    if not in_envelope(spec, p, local=local):
        raise UnreachableError(f"point {tuple(p)} is outside the envelope", "reachability")
    scale = max(1.0, math.hypot(x, y))
    q = _LeftPoint(*args, tol=BOUNDARY_TOL * scale)
    res = _evaluate(_min_pieces(q) if which == "min" else _max_pieces(q), check_agree)
    if res is None:
        raise UnreachableError(f"no {which} piece applies at {tuple(p)}", "piece-guards")
    return res


def d_min(spec: TurnSpec, p, local: bool = False, check_agree: bool = False) -> float:
    """Length of the shortest admissible path from the start to ``p``."""
    return _bound(spec, p, local, "min", check_agree)[1]


def d_max(spec: TurnSpec, p, local: bool = False, check_agree: bool = False) -> float:
    """Length of the longest admissible path from the start to ``p``."""
    return _bound(spec, p, local, "max", check_agree)[1]


def min_piece(spec: TurnSpec, p, local: bool = False) -> int:
    return _bound(spec, p, local, "min", False)[0]


def max_piece(spec: TurnSpec, p, local: bool = False) -> int:
    return _bound(spec, p, local, "max", False)[0]


# (min piece, max piece) -> region letter
REGION_OF_PIECES = {
    (3, 3): "A",
    (2, 3): "B",
    (1, 3): "C",
    (2, 2): "D",
    (2, 1): "E",
    (1, 1): "F",
    (1, 2): "G",
}


def region_label(spec: TurnSpec, p, local: bool = False):
    """Letter of the envelope region containing ``p``; None for the start or the straight ray."""
    key = (min_piece(spec, p, local), max_piece(spec, p, local))
    return REGION_OF_PIECES.get(key)


# --------------------------------------------------------------------------
# Timing


def point_timing(spec: TurnSpec, p, local: bool = False) -> PointTiming:
    lo = d_min(spec, p, local)
    hi = d_max(spec, p, local)
    hi = max(hi, lo)
    return PointTiming(lo / spec.s_beta, hi / spec.s_alpha)


def pointwise_conflict(own: PointTiming, intr: PointTiming) -> CollisionInterval:
    """Overlap of the two arrival windows, or an empty interval."""
    lo = max(own.t_e, intr.t_e)
    hi = min(own.t_l, intr.t_l)
    if lo > hi:
        return CollisionInterval.none()
    return CollisionInterval(lo, hi)


def conflict_predicates(own: PointTiming, intr: PointTiming):
    """The early-time and late-time forms of the conflict test; they always agree."""
    w_e = (own.t_e <= intr.t_e <= own.t_l) or (intr.t_e <= own.t_e <= intr.t_l)
    w_l = (own.t_e <= intr.t_l <= own.t_l) or (intr.t_e <= own.t_l <= intr.t_l)
    return w_e, w_l


def conflict_at(own_spec: TurnSpec, intr_spec: TurnSpec, p) -> CollisionInterval:
    """World-frame pointwise conflict interval; empty when either vehicle cannot reach ``p``."""
    if not (in_envelope(own_spec, p) and in_envelope(intr_spec, p)):
        return CollisionInterval.none()
    return pointwise_conflict(point_timing(own_spec, p), point_timing(intr_spec, p))
