"""Shared fixtures: reference specs and random region instances."""

import math

import numpy as np

from ttbconflict.geometry import HalfPlane, Point2, make_region, to_global
from ttbconflict.kinematics import PathParams, TurnSpec, in_envelope, position_at_distance
from ttbconflict.partition import RegionTiming
from ttbconflict.waves import EdgeKind, Role, WaveEdge

FIG1 = TurnSpec.from_tuple(0, 0, 0, 3.22, 6.89, 2.41, 3.62, 1, 2)
FIG5_INTRUDER = TurnSpec.from_tuple(-25, 10, 0, -60, -30, -0.25, -0.05, 1, 1.8)
DISJOINT_INTRUDER = TurnSpec.from_tuple(40, -30, 0, -20, -10, -0.5, -0.1, 1, 2)
ARC_POINT = (3.22 * math.sin(1), 3.22 * (1 - math.cos(1)))


def reachable_points(spec, n, seed, box=(-20, 15, -12, 20)):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        p = (rng.uniform(box[0], box[1]), rng.uniform(box[2], box[3]))
        if in_envelope(spec, p):
            out.append(p)
    return out


def path_points(spec, n, rng, tail=25.0):
    """Points on randomly drawn envelope paths (always reachable)."""
    left, flip = spec.as_left()
    out = []
    for _ in range(n):
        r = rng.uniform(left.r_alpha, left.r_beta)
        th = rng.uniform(left.theta_alpha, left.theta_beta)
        x, y = position_at_distance(PathParams(r, th), rng.uniform(1e-3, r * th + tail))
        out.append(to_global((x, -y if flip else y), spec.pose))
    return out


def random_polygon(rng, bounded=True):
    c = rng.uniform(-1, 1, 2)
    k = rng.integers(3, 7)
    angs = np.sort(rng.uniform(0, 2 * np.pi, k))
    hps = [
        HalfPlane(math.cos(a), math.sin(a), math.cos(a) * c[0] + math.sin(a) * c[1] + rng.uniform(0.2, 0.7))
        for a in angs
    ]
    reg = make_region(hps)
    if reg is None or (bounded and not reg.bounded):
        return None
    return reg


def random_edge_pair(rng, kind=None):
    """A front/back pair whose back is never earlier than its front near the origin."""
    kind = kind or ("circ" if rng.random() < 0.5 else "lin")
    sf, sb = rng.uniform(1.5, 2.5), rng.uniform(0.7, 1.3)
    if kind == "circ":
        c = rng.uniform(-4, 4, 2)
        off = rng.uniform(-1, 1)
        f = WaveEdge(EdgeKind.CIRCULAR, Role.FRONT, sf, off, center=Point2(*c))
        cb = c + rng.uniform(-0.5, 0.5, 2)
        b = WaveEdge(EdgeKind.CIRCULAR, Role.BACK, sb, off - rng.uniform(0, 1), center=Point2(*cb))
        return f, b
    a = rng.uniform(0, 2 * np.pi)
    c0 = rng.uniform(-5, -2)
    f = WaveEdge(EdgeKind.LINEAR, Role.FRONT, sf, c0, n=(math.cos(a), math.sin(a)))
    a2 = a + rng.uniform(-0.3, 0.3)
    b = WaveEdge(EdgeKind.LINEAR, Role.BACK, sb, c0 - rng.uniform(0, 1), n=(math.cos(a2), math.sin(a2)))
    return f, b


def random_region_timing(rng, kinds=(None, None), bounded=True):
    while True:
        poly = random_polygon(rng, bounded)
        if poly is not None:
            break
    of, ob = random_edge_pair(rng, kinds[0])
    intf, intb = random_edge_pair(rng, kinds[1])
    return RegionTiming(poly, of, ob, intf, intb)
