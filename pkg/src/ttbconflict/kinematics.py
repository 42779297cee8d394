"""Deterministic turn-to-bearing paths and the non-deterministic maneuver envelope.

All formulas are written for the standard frame: start at the origin heading
along +x.  Positive radii and bearing offsets are left (counterclockwise) turns.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .geometry import TWO_PI, Point2, Pose, chord_params, to_local

CONSISTENCY_TOL = 1e-6
BOUNDARY_TOL = 1e-9


class InfeasibleError(ValueError):
    """A requested path does not exist; ``clause`` names the violated condition."""

    def __init__(self, message: str, clause: str = ""):
        super().__init__(message)
        self.clause = clause


class Mode(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    EITHER = "either"


@dataclass(frozen=True)
class TurnSpec:
    """One vehicle's envelope: pose plus radius, bearing-offset and speed bounds."""

    pose: Pose
    r_alpha: float
    r_beta: float
    theta_alpha: float
    theta_beta: float
    s_alpha: float
    s_beta: float
    mode: Mode = Mode.LEFT

    def __post_init__(self):
        if isinstance(self.mode, str):
            object.__setattr__(self, "mode", Mode(self.mode))
        errs = self.violations()
        if errs:
            raise InfeasibleError("invalid TurnSpec: " + "; ".join(errs), errs[0])

    @classmethod
    def from_tuple(cls, x0, y0, theta0, r_a, r_b, th_a, th_b, s_a, s_b, mode=None):
        if mode is None:
            mode = Mode.LEFT if r_a > 0 and r_b > 0 else Mode.RIGHT if r_a < 0 and r_b < 0 else Mode.EITHER
        return cls(Pose(Point2(x0, y0), theta0), r_a, r_b, th_a, th_b, s_a, s_b, mode)

    def violations(self) -> list:
        ra, rb, ta, tb = self.r_alpha, self.r_beta, self.theta_alpha, self.theta_beta
        errs = []
        if not (0 < self.s_alpha <= self.s_beta):
            errs.append("speed bounds require 0 < s_alpha <= s_beta")
        if self.mode is Mode.LEFT:
            if not (0 < ra <= rb):
                errs.append("left turn requires 0 < r_alpha <= r_beta")
            if not (0 < ta <= tb < TWO_PI):
                errs.append("left turn requires 0 < theta_alpha <= theta_beta < 2*pi")
        elif self.mode is Mode.RIGHT:
            if not (ra <= rb < 0):
                errs.append("right turn requires r_alpha <= r_beta < 0")
            if not (-TWO_PI < ta <= tb < 0):
                errs.append("right turn requires -2*pi < theta_alpha <= theta_beta < 0")
        else:
            if not (rb < 0 < ra):
                errs.append("either-direction turn requires r_beta < 0 < r_alpha")
            if not (-TWO_PI < ta <= 0 <= tb < TWO_PI):
                errs.append("either-direction turn requires theta_alpha <= 0 <= theta_beta")
        return errs

    def local(self, p) -> Point2:
        return to_local(p, self.pose)

    def mirrored(self) -> "TurnSpec":
        """Left/right mirror image in the vehicle frame (world pose unchanged)."""
        if self.mode is Mode.EITHER:
            raise ValueError("mirrored: either-direction specs are self-describing")
        return TurnSpec(
            self.pose,
            -self.r_beta,
            -self.r_alpha,
            -self.theta_beta,
            -self.theta_alpha,
            self.s_alpha,
            self.s_beta,
            Mode.LEFT if self.mode is Mode.RIGHT else Mode.RIGHT,
        )

    def as_left(self) -> "tuple[TurnSpec, bool]":
        """Left-turn equivalent and whether the local y axis must be flipped."""
        if self.mode is Mode.LEFT:
            return self, False
        if self.mode is Mode.RIGHT:
            return self.mirrored(), True
        raise ValueError("as_left: either-direction spec")

    @property
    def deterministic(self) -> bool:
        return self.r_alpha == self.r_beta and self.theta_alpha == self.theta_beta


@dataclass(frozen=True)
class PathParams:
    r: float
    theta_c: float

    def __post_init__(self):
        if not (0 < self.r * self.theta_c < TWO_PI * abs(self.r)):
            raise InfeasibleError("PathParams require 0 < r*theta_c < 2*pi*|r|", "rtp")

    @property
    def arc_length(self) -> float:
        return self.r * self.theta_c


def position_at_distance(params: PathParams, d: float) -> Point2:
    """Local-frame position after travelling distance ``d`` along the path."""
    if d < 0:
        raise ValueError("position_at_distance: negative distance")
    r, th = params.r, params.theta_c
    arc = r * th
    if d <= arc:
        phi = d / r
        return Point2(r * math.sin(phi), r * (1.0 - math.cos(phi)))
    ell = d - arc
    return Point2(
        ell * math.cos(th) + r * math.sin(th),
        ell * math.sin(th) + r * (1.0 - math.cos(th)),
    )


def turn_point(r: float, theta: float) -> Point2:
    """Point on the turn circle where the heading equals ``theta``."""
    return Point2(r * math.sin(theta), r * (1.0 - math.cos(theta)))


# --------------------------------------------------------------------------
# Radius for a chosen approach angle


def angle_admissible(p, theta: float) -> bool:
    x, y = p
    if x == 0.0 and y == 0.0:
        return False
    theta_m, _ = chord_params(p)
    if theta_m > 0:
        return (theta_m / 2 < theta <= theta_m) or (-TWO_PI < theta < theta_m / 2 - TWO_PI)
    if theta_m < 0:
        return (theta_m <= theta < theta_m / 2) or (theta_m / 2 + TWO_PI < theta < TWO_PI)
    return False


def radius_for_angle(p, theta: float, check: bool = True) -> float:
    """Signed radius of the turn that reaches ``p`` with heading ``theta``."""
    x, y = float(p[0]), float(p[1])
    if check and not angle_admissible((x, y), theta):
        theta_m, _ = chord_params((x, y)) if (x, y) != (0.0, 0.0) else (float("nan"), None)
        raise InfeasibleError(
            f"heading {theta} cannot reach ({x}, {y}); theta_m = {theta_m}", "theta-admissibility"
        )
    den = 1.0 - math.cos(theta)
    if den == 0.0:
        raise InfeasibleError("heading is a multiple of 2*pi", "theta-nonzero")
    return (x * math.sin(theta) - y * math.cos(theta)) / den


# --------------------------------------------------------------------------
# Approach angle for a chosen radius


def radius_feasible(p, r: float, tol: float = 0.0) -> bool:
    """Whether a turn of radius ``r`` can reach ``p`` via a tangent exit."""
    x, y = p
    if r == 0:
        return False
    if y > 0:
        return r <= (x * x + y * y) / (2 * y) * (1 + tol) + tol
    if y == 0:
        return x < 0
    return (x * x + y * y) / (2 * y) * (1 + tol) - tol <= r


def phase_correction(x: float, y: float, r: float) -> float:
    """Branch offset added to the principal 2*atan(...) value.

    Case table (validated against a grid inversion of ``radius_for_angle``):
      r > 0:  0    if (x > 0 and y > 0) or (x <= 0 and y > 2r)
              2pi  if (x >= 0 and y < 0) or (x < 0 and y < 2r)
      r < 0:  0    if (x < 0 and y < 0) or (x >= 0 and y < 2r)
             -2pi  if (x >= 0 and y > 0) or (x < 0 and y > 2r)
    which is exactly "shift the principal value onto the sign of r".
    """
    if r > 0:
        if (x > 0 and y > 0) or (x <= 0 and y > 2 * r):
            return 0.0
        return TWO_PI
    if (x < 0 and y < 0) or (x >= 0 and y < 2 * r):
        return 0.0
    return -TWO_PI


def angle_for_radius(p, r: float, check: bool = True) -> float:
    """Exit heading of the radius-``r`` turn whose tangent passes through ``p``."""
    x, y = float(p[0]), float(p[1])
    if check and not radius_feasible((x, y), r, BOUNDARY_TOL):
        raise InfeasibleError(f"({x}, {y}) lies inside the radius {r} turning circle", "radius-feasibility")
    if r < 0:
        return -angle_for_radius((x, -y), -r, check=False)
    k = 2.0 * r - y
    disc = max(x * x - k * y, 0.0)
    if abs(k) < 1e-9 * max(1.0, abs(y)):
        if x > 0:
            return 2.0 * math.atan(y / (2.0 * x))
        return math.pi
    sq = math.sqrt(disc)
    if x > 0:
        # Rationalized numerator avoids cancellation in x - sqrt(x^2 - k*y).
        u = y / (x + sq)
    else:
        u = (x - sq) / k
    th = 2.0 * math.atan(u)
    if th <= 0.0:
        th += TWO_PI
    return th


def straight_dist_sq(p, r: float) -> float:
    """Squared length of the tangent segment: x^2 - (2r - y) y."""
    x, y = float(p[0]), float(p[1])
    if not radius_feasible((x, y), r, BOUNDARY_TOL):
        raise InfeasibleError(f"({x}, {y}) unreachable with radius {r}", "radius-feasibility")
    return max(x * x - (2.0 * r - y) * y, 0.0)


def path_length(p, theta: float, r: float, check: bool = True) -> float:
    """Arc length r*theta plus the straight remainder to ``p``."""
    x, y = float(p[0]), float(p[1])
    tx, ty = r * math.sin(theta), r * (1.0 - math.cos(theta))
    if check:
        # The remainder must leave the turn point along the exit heading.
        dx, dy = x - tx, y - ty
        along = dx * math.cos(theta) + dy * math.sin(theta)
        across = -dx * math.sin(theta) + dy * math.cos(theta)
        scale = max(1.0, abs(r), math.hypot(x, y))
        if abs(across) > CONSISTENCY_TOL * scale or along < -CONSISTENCY_TOL * scale:
            raise InfeasibleError(
                f"(theta={theta}, r={r}) does not pass through ({x}, {y})", "path-consistency"
            )
    return r * theta + math.hypot(x - tx, y - ty)


def arc_length_to(p) -> float:
    """Length of the pure arc from the origin to ``p`` (r_m * theta_m)."""
    theta_m, r_m = chord_params(p)
    return r_m * theta_m


# --------------------------------------------------------------------------
# Envelope membership


def _theta_of(x, y, r):
    if math.isinf(r):
        # Infinite radius limit: the exit heading approaches a full turn.
        return TWO_PI if y <= 0 else 2.0 * math.atan2(y, x)
    return angle_for_radius((x, y), r, check=False)


def _left_reachable(x, y, ra, rb, ta, tb, tol=BOUNDARY_TOL) -> bool:
    if x == 0.0 and y == 0.0:
        return True
    theta_m, r_m = chord_params((x, y))
    if y > 0:
        if ra * (1 - tol) - tol <= r_m <= rb * (1 + tol) + tol and theta_m <= tb + tol:
            return True
        r_hi = min(rb, r_m)
        if r_hi < ra * (1 - tol) - tol:
            return False
    elif y == 0 and x > 0:
        return False
    else:
        r_hi = rb
    r_lo = min(ra, r_hi)
    return _theta_of(x, y, r_lo) <= tb + tol and _theta_of(x, y, r_hi) >= ta - tol


def in_envelope(spec: TurnSpec, p, local: bool = False) -> bool:
    """Whether some admissible (radius, bearing) path reaches ``p``."""
    x, y = p if local else spec.local(p)
    if spec.mode is Mode.LEFT:
        return _left_reachable(x, y, spec.r_alpha, spec.r_beta, spec.theta_alpha, spec.theta_beta)
    if spec.mode is Mode.RIGHT:
        return _left_reachable(x, -y, -spec.r_beta, -spec.r_alpha, -spec.theta_beta, -spec.theta_alpha)
    if y > 0:
        return _left_reachable(x, y, spec.r_alpha, math.inf, 0.0, spec.theta_beta)
    if y < 0:
        return _left_reachable(x, -y, -spec.r_beta, math.inf, 0.0, -spec.theta_alpha)
    return x >= 0 or _left_reachable(x, y, spec.r_alpha, math.inf, 0.0, spec.theta_beta)
