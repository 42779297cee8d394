import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ttbconflict.bounds import (
    PointTiming,
    UnreachableError,
    conflict_at,
    conflict_predicates,
    d_max,
    d_min,
    max_piece,
    min_piece,
    point_timing,
    pointwise_conflict,
    region_label,
)
from ttbconflict.kinematics import TurnSpec, in_envelope
from ttbconflict.oracle import grid_min_max_dist

FIG1 = TurnSpec.from_tuple(0, 0, 0, 3.22, 6.89, 2.41, 3.62, 1, 2)
FIG1_RIGHT = TurnSpec.from_tuple(0, 0, 0, -6.89, -3.22, -3.62, -2.41, 1, 2)
ARC_POINT = (3.22 * math.sin(1), 3.22 * (1 - math.cos(1)))
# oracle-frozen values at a generic interior point
P_GENERIC = (-5.0, 6.0)
DMIN_GENERIC = 15.135630008
DMAX_GENERIC = 18.164974212


def reachable_points(spec, n, seed, box=(-20, 15, -12, 20)):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        p = (rng.uniform(box[0], box[1]), rng.uniform(box[2], box[3]))
        if in_envelope(spec, p):
            out.append(p)
    return out


pts = st.tuples(st.floats(-20, 15), st.floats(-12, 20))


def test_arc_point_unique_path():
    assert d_min(FIG1, ARC_POINT) == pytest.approx(3.22)
    assert d_max(FIG1, ARC_POINT) == pytest.approx(3.22)


def test_max_half_circle():
    assert d_max(FIG1, (0, 2 * 6.89)) == pytest.approx(6.89 * math.pi)


def test_generic_point_frozen():
    assert d_min(FIG1, P_GENERIC) == pytest.approx(DMIN_GENERIC, abs=1e-6)
    assert d_max(FIG1, P_GENERIC) == pytest.approx(DMAX_GENERIC, abs=1e-6)
    lo, hi = grid_min_max_dist(FIG1, P_GENERIC)
    assert lo == pytest.approx(DMIN_GENERIC, abs=1e-3)
    assert hi == pytest.approx(DMAX_GENERIC, abs=1e-3)


def test_unreachable_raises():
    with pytest.raises(UnreachableError):
        d_min(FIG1, (-5, 4))
    with pytest.raises(UnreachableError):
        d_max(FIG1, (100, -100))


def test_either_mode_straight_ahead():
    spec = TurnSpec.from_tuple(0, 0, 0, 2, -2, -1, 1, 1, 2)
    assert d_min(spec, (7.5, 0)) == pytest.approx(7.5)
    assert d_max(spec, (7.5, 0)) == pytest.approx(7.5)


def test_either_mode_matches_sides():
    spec = TurnSpec.from_tuple(0, 0, 0, 2, -3, -1.5, 1.2, 1, 2)
    left = TurnSpec.from_tuple(0, 0, 0, 2, 1e9, 1e-9, 1.2, 1, 2)
    right = TurnSpec.from_tuple(0, 0, 0, -1e9, -3, -1.5, -1e-9, 1, 2)
    for p in [(5, 2), (4, 3)]:
        if in_envelope(spec, p):
            assert d_min(spec, p) == pytest.approx(d_min(left, p), rel=1e-6)
    for p in [(5, -2), (4, -3)]:
        if in_envelope(spec, p):
            assert d_min(spec, p) == pytest.approx(d_min(right, p), rel=1e-6)


def test_oracle_sandwich():
    for p in reachable_points(FIG1, 300, seed=2):
        lo, hi = grid_min_max_dist(FIG1, p, n_r=200, n_theta=200, refine=False)
        assert lo >= d_min(FIG1, p) - 1e-3
        assert hi <= d_max(FIG1, p) + 1e-3


def test_oracle_gaps_shrink():
    coarse, fine = [], []
    for p in reachable_points(FIG1, 40, seed=3):
        a, b = d_min(FIG1, p), d_max(FIG1, p)
        lo, hi = grid_min_max_dist(FIG1, p, n_r=20, n_theta=20, refine=False)
        coarse.append((lo - a) + (b - hi))
        lo, hi = grid_min_max_dist(FIG1, p, n_r=2000, n_theta=2000, refine=False)
        fine.append((lo - a) + (b - hi))
    assert sum(fine) <= sum(coarse) + 1e-9
    assert max(fine) < 1e-2


def test_oracle_refined_agreement():
    for p in reachable_points(FIG1, 60, seed=4):
        lo, hi = grid_min_max_dist(FIG1, p, n_r=300, n_theta=300)
        assert d_min(FIG1, p) == pytest.approx(lo, abs=1e-6)
        assert d_max(FIG1, p) == pytest.approx(hi, abs=1e-6)


@settings(max_examples=200)
@given(pts)
def test_min_le_max_and_straight_line(p):
    assume(in_envelope(FIG1, p))
    a, b = d_min(FIG1, p, check_agree=True), d_max(FIG1, p, check_agree=True)
    assert a <= b + 1e-9
    assert a >= math.hypot(*p) - 1e-9


@settings(max_examples=200)
@given(pts)
def test_right_mode_mirror(p):
    assume(in_envelope(FIG1, p))
    q = (p[0], -p[1])
    assert d_min(FIG1_RIGHT, q) == pytest.approx(d_min(FIG1, p), rel=1e-12, abs=1e-12)
    assert d_max(FIG1_RIGHT, q) == pytest.approx(d_max(FIG1, p), rel=1e-12, abs=1e-12)


def test_world_frame_pose():
    spec = TurnSpec.from_tuple(3, -2, 0.7, 3.22, 6.89, 2.41, 3.62, 1, 2)
    c, s = math.cos(0.7), math.sin(0.7)
    x, y = P_GENERIC
    world = (3 + c * x - s * y, -2 + s * x + c * y)
    assert d_min(spec, world) == pytest.approx(DMIN_GENERIC, abs=1e-6)


def _boundary_crossings(spec, which, n_lines=30, samples=4000, seed=5):
    """Pairs of adjacent samples along random lines where the active piece changes."""
    rng = np.random.default_rng(seed)
    piece = min_piece if which == "min" else max_piece
    fn = d_min if which == "min" else d_max
    jumps = 0
    for _ in range(n_lines):
        a = np.array([rng.uniform(-15, 10), rng.uniform(-8, 16)])
        b = np.array([rng.uniform(-15, 10), rng.uniform(-8, 16)])
        prev = None
        for t in np.linspace(0, 1, samples):
            p = tuple(a + t * (b - a))
            if not in_envelope(spec, p):
                prev = None
                continue
            cur = (piece(spec, p), fn(spec, p))
            if prev is not None and prev[0] != cur[0]:
                step = np.linalg.norm(b - a) / samples
                assert abs(prev[1] - cur[1]) <= 2.5 * step + 1e-6
                jumps += 1
            prev = cur
    return jumps


def test_piece_continuity_min():
    assert _boundary_crossings(FIG1, "min") > 0


def test_piece_continuity_max():
    assert _boundary_crossings(FIG1, "max") > 0


def test_piece_boundary_limits_agree():
    # approach a piece boundary from both sides with shrinking steps
    for which, fn, piece in (("min", d_min, min_piece), ("max", d_max, max_piece)):
        rng = np.random.default_rng(9)
        found = 0
        for _ in range(200):
            a = np.array([rng.uniform(-15, 10), rng.uniform(-8, 16)])
            b = np.array([rng.uniform(-15, 10), rng.uniform(-8, 16)])
            if not (in_envelope(FIG1, a) and in_envelope(FIG1, b)):
                continue
            if piece(FIG1, a) == piece(FIG1, b):
                continue
            lo, hi = 0.0, 1.0
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                m = a + mid * (b - a)
                if not in_envelope(FIG1, m):
                    break
                if piece(FIG1, m) == piece(FIG1, a):
                    lo = mid
                else:
                    hi = mid
            else:
                pa, pb = a + lo * (b - a), a + hi * (b - a)
                assert fn(FIG1, pa) == pytest.approx(fn(FIG1, pb), abs=1e-6)
                found += 1
        assert found > 0, which


def test_region_labels_present():
    labels = {region_label(FIG1, p) for p in reachable_points(FIG1, 800, seed=6)}
    assert {"A", "B", "C", "E", "F", "G"} <= labels


def test_timing_examples():
    t = point_timing(FIG1, ARC_POINT)
    assert (t.t_e, t.t_l) == pytest.approx((1.61, 3.22))
    det = TurnSpec.from_tuple(0, 0, 0, 3.22, 6.89, 2.41, 3.62, 2, 2)
    t = point_timing(det, P_GENERIC)
    assert t.t_e == pytest.approx(DMIN_GENERIC / 2, abs=1e-6)
    assert t.t_l == pytest.approx(DMAX_GENERIC / 2, abs=1e-6)


def test_point_timing_invariant():
    with pytest.raises(ValueError):
        PointTiming(2, 1)


def test_pointwise_conflict_examples():
    c = pointwise_conflict(PointTiming(1, 3), PointTiming(2, 4))
    assert not c.empty and (c.t_e, c.t_l) == (2, 3)
    assert pointwise_conflict(PointTiming(1, 2), PointTiming(3, 4)).empty
    c = pointwise_conflict(PointTiming(1.61, 3.22), PointTiming(1.61, 3.22))
    assert (c.t_e, c.t_l) == (1.61, 3.22)


def test_predicates_agree_on_real_timings():
    intr = TurnSpec.from_tuple(-6, 14, -1.2, 2.5, 5.0, 1.0, 2.6, 0.8, 1.6)
    rng = np.random.default_rng(7)
    seen = 0
    for _ in range(3000):
        p = (rng.uniform(-15, 10), rng.uniform(-5, 20))
        if in_envelope(FIG1, p) and in_envelope(intr, p):
            w_e, w_l = conflict_predicates(point_timing(FIG1, p), point_timing(intr, p))
            assert w_e == w_l
            assert w_e == (not conflict_at(FIG1, intr, p).empty)
            seen += 1
    assert seen > 20


@given(*(st.floats(0, 10) for _ in range(4)))
def test_predicates_agree_generic(a, b, c, d):
    own = PointTiming(min(a, b), max(a, b))
    intr = PointTiming(min(c, d), max(c, d))
    w_e, w_l = conflict_predicates(own, intr)
    assert w_e == w_l == (not pointwise_conflict(own, intr).empty)
