"""Linear and circular wave edges bounding the arrival-time field inside a polygon.

A front edge gives a lower bound on the shortest path length paired with the
top speed; a back edge gives an upper bound on the longest path paired with the
bottom speed.  Either way the edge turns into a time function
``tau(p) = (G(p) - c) / s`` where ``G`` is ``n . p`` (linear) or ``|p - center|``
(circular).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .geometry import Point2, Pose, to_global
from .kinematics import turn_point

SIN_HALF_TOL = 1e-9


class EdgeKind(enum.Enum):
    LINEAR = "linear"
    CIRCULAR = "circular"


class Role(enum.Enum):
    FRONT = "front"
    BACK = "back"
    ZERO = "zero"


@dataclass(frozen=True)
class WaveEdge:
    kind: EdgeKind
    role: Role
    s: float
    c: float = 0.0
    n: tuple = (0.0, 0.0)
    center: Point2 = Point2(0.0, 0.0)

    def __post_init__(self):
        if not self.s > 0:
            raise ValueError("WaveEdge speed must be positive")
        if self.kind is EdgeKind.LINEAR and self.role is not Role.ZERO and self.n == (0.0, 0.0):
            raise ValueError("linear WaveEdge needs a nonzero normal")
        object.__setattr__(self, "n", (float(self.n[0]), float(self.n[1])))
        object.__setattr__(self, "center", Point2(float(self.center[0]), float(self.center[1])))

    @property
    def circular(self) -> bool:
        return self.kind is EdgeKind.CIRCULAR

    def distance(self, p) -> float:
        """Path-length bound implied at ``p`` (G(p) - c)."""
        if self.circular:
            return math.hypot(p[0] - self.center.x, p[1] - self.center.y) - self.c
        return self.n[0] * p[0] + self.n[1] * p[1] - self.c

    def time(self, p) -> float:
        return self.distance(p) / self.s

    def time_many(self, xs, ys):
        if self.circular:
            g = np.hypot(xs - self.center.x, ys - self.center.y)
        else:
            g = self.n[0] * xs + self.n[1] * ys
        return (g - self.c) / self.s

    def radius_at(self, t: float) -> float:
        """Circle radius (circular) or plane offset (linear) at time ``t``."""
        return self.s * t + self.c

    def transformed(self, frame: Pose, mirror: bool = False) -> "WaveEdge":
        """Map an edge written in a vehicle's left-turn frame into the world frame."""
        if self.circular:
            cx, cy = self.center
            if mirror:
                cy = -cy
            return WaveEdge(self.kind, self.role, self.s, self.c, center=to_global((cx, cy), frame))
        n1, n2 = self.n
        if mirror:
            n2 = -n2
        ch, sh = math.cos(frame.heading), math.sin(frame.heading)
        m1, m2 = ch * n1 - sh * n2, sh * n1 + ch * n2
        c = self.c + m1 * frame.position.x + m2 * frame.position.y
        return WaveEdge(self.kind, self.role, self.s, c, n=(m1, m2))

    def key(self):
        """Canonical tuple for sorting and de-duplication."""
        return (
            self.kind.value,
            round(self.s, 12),
            round(self.c, 9),
            tuple(round(v, 9) for v in self.n),
            tuple(round(v, 9) for v in self.center),
        )

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "role": self.role.value, "s": self.s, "c": self.c}
        if self.circular:
            d["center"] = list(self.center)
        else:
            d["n"] = list(self.n)
        return d


ZERO_WAVE = WaveEdge(EdgeKind.LINEAR, Role.ZERO, 1.0, 0.0, n=(0.0, 0.0))


def sinc(x: float) -> float:
    return 1.0 if x == 0 else math.sin(x) / x


def linear_coefficients(theta: float) -> tuple:
    """(f1, f2) with exact path length f1*x + f2*y for every path with exit heading ``theta``."""
    sh = math.sin(theta / 2)
    if abs(sh) < SIN_HALF_TOL:
        raise ValueError(f"linear wave undefined at heading {theta} (cot singularity)")
    cot = math.cos(theta / 2) / sh
    den = 1.0 - math.cos(theta)
    return cot * theta - 1.0, cot - math.cos(theta) / den * theta


def linear_wave(theta: float, s: float, role: Role) -> WaveEdge:
    return WaveEdge(EdgeKind.LINEAR, role, s, 0.0, n=linear_coefficients(theta))


def circular_tile_waves(th1: float, th2: float, s_min: float, s_max: float):
    """Origin-centred front/back waves for arcs ending with bearing in [th1, th2]."""
    if not (0 <= th1 <= th2 < 2 * math.pi):
        raise ValueError("circular_tile_waves requires 0 <= th1 <= th2 < 2*pi")
    front = WaveEdge(EdgeKind.CIRCULAR, Role.FRONT, s_max * sinc(th1 / 2))
    back = WaveEdge(EdgeKind.CIRCULAR, Role.BACK, s_min * sinc(th2 / 2))
    return front, back


def wedge_front(r: float, phi1: float, s_max: float) -> WaveEdge:
    """Lower bound r*phi1 + |p - w(phi1)| for radius-r paths exiting at phi1 or later."""
    return WaveEdge(EdgeKind.CIRCULAR, Role.FRONT, s_max, -r * phi1, center=turn_point(r, phi1))


def wedge_back(r: float, phi2: float, s_min: float) -> WaveEdge:
    """Upper bound r*phi2 + |p - w(phi2)| for radius-r paths exiting at phi2 or earlier."""
    return WaveEdge(EdgeKind.CIRCULAR, Role.BACK, s_min, -r * phi2, center=turn_point(r, phi2))


def involute_waves(r: float, phi2: float, s_min: float, s_max: float, anchor: Pose | None = None):
    """Front/back pair for a wedge starting at the beginning of the turn, moved by ``anchor``."""
    if not (0 < phi2 < 2 * math.pi):
        raise ValueError("involute_waves requires 0 < phi2 < 2*pi")
    front = wedge_front(r, 0.0, s_max)
    back = wedge_back(r, phi2, s_min)
    if anchor is not None:
        front, back = front.transformed(anchor), back.transformed(anchor)
    return front, back
