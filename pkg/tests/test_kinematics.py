import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ttbconflict.kinematics import (
    InfeasibleError,
    Mode,
    PathParams,
    TurnSpec,
    angle_for_radius,
    in_envelope,
    path_length,
    phase_correction,
    position_at_distance,
    radius_for_angle,
    straight_dist_sq,
    turn_point,
)

FIG1 = TurnSpec.from_tuple(0, 0, 0, 3.22, 6.89, 2.41, 3.62, 1, 2)
ARC_POINT = (3.22 * math.sin(1), 3.22 * (1 - math.cos(1)))

radius = st.floats(0.2, 20)
bearing = st.floats(0.05, 2 * math.pi - 0.05)
tail = st.floats(0.0, 30)


@st.composite
def tangent_point(draw):
    """A point reached by a (r, theta) tangent path, with the path parameters."""
    r, th, ell = draw(radius), draw(bearing), draw(tail)
    tx, ty = turn_point(r, th)
    return (tx + ell * math.cos(th), ty + ell * math.sin(th)), r, th, ell


# ---- position along a path


def test_position_examples():
    q = PathParams(1, math.pi / 2)
    assert position_at_distance(q, math.pi / 2) == pytest.approx((1, 1))
    assert position_at_distance(q, math.pi / 2 + 1) == pytest.approx((1, 2))
    assert position_at_distance(q, 0) == pytest.approx((0, 0))


def test_position_negative_distance():
    with pytest.raises(ValueError):
        position_at_distance(PathParams(1, 1), -0.1)


def test_right_turn_position_mirrors_left():
    left = position_at_distance(PathParams(2, 1.3), 4.0)
    right = position_at_distance(PathParams(-2, -1.3), 4.0)
    assert right == pytest.approx((left[0], -left[1]))


def test_path_params_rtp():
    with pytest.raises(InfeasibleError):
        PathParams(1, -1)
    with pytest.raises(InfeasibleError):
        PathParams(1, 7)


@settings(deadline=None, max_examples=40)
@given(st.floats(-15, 15).filter(lambda r: abs(r) > 0.2), st.floats(0.05, 6.2), st.floats(0.1, 40))
def test_arc_length_parameterization(r, th_abs, dist):
    q = PathParams(r, math.copysign(th_abs, r))
    h = 1e-4
    ds = np.arange(0, dist, h)
    pts = np.array([position_at_distance(q, d) for d in np.append(ds, dist)])
    length = np.sum(np.hypot(*np.diff(pts, axis=0).T))
    assert length == pytest.approx(dist, rel=1e-5)


@given(radius, bearing, tail)
def test_tangent_ray(r, th, s):
    q = PathParams(r, th)
    p = position_at_distance(q, r * th + s)
    tx, ty = turn_point(r, th)
    dx, dy = p[0] - tx, p[1] - ty
    assert abs(-dx * math.sin(th) + dy * math.cos(th)) < 1e-9 * max(1, s)
    assert dx * math.cos(th) + dy * math.sin(th) >= -1e-9


# ---- R(x, y, theta)


def test_radius_examples():
    assert radius_for_angle((0, 2), math.pi) == pytest.approx(1)
    assert radius_for_angle((1, 1), math.pi / 2) == pytest.approx(1)
    # pi/2 exceeds theta_m here, so only the bare formula applies
    assert radius_for_angle((3, 1), math.pi / 2, check=False) == pytest.approx(3)


def test_radius_inadmissible_angle():
    with pytest.raises(InfeasibleError) as e:
        radius_for_angle((3, 1), 0.1)
    assert e.value.clause == "theta-admissibility"


def test_radius_boundary_angle_accepted():
    th_m = 2 * math.atan2(1, 1)
    assert radius_for_angle((1, 1), th_m) == pytest.approx(1)


@given(st.floats(-20, 20), st.floats(-20, 20), st.floats(0.01, 0.99), st.floats(0.01, 0.99))
def test_radius_ordering(x, y, u, v):
    assume(abs(y) > 1e-2 and math.hypot(x, y) > 1e-2)
    th_m = 2 * math.atan2(y, x)
    # admissible interval (th_m/2, th_m] for th_m > 0, mirrored otherwise
    lo, hi = sorted((th_m / 2, th_m))
    t1, t2 = lo + (hi - lo) * max(u, v), lo + (hi - lo) * min(u, v)
    assume(t1 - t2 > 1e-6)
    if th_m > 0:
        assert radius_for_angle((x, y), t1) > radius_for_angle((x, y), t2)
    else:
        # right turns: larger |theta| gives larger |r|
        assert radius_for_angle((x, y), t2) < radius_for_angle((x, y), t1)


# ---- Theta(x, y, r)


def test_angle_examples():
    assert angle_for_radius((1, 1), 1) == pytest.approx(math.pi / 2)
    assert angle_for_radius((1, 2), 1) == pytest.approx(math.pi / 2)


def test_angle_grid_inversion():
    p = (-3.0, 0.5)
    th = angle_for_radius(p, 1)
    grid = np.arange(1e-6, 2 * math.pi, 1e-6)
    den = 1 - np.cos(grid)
    rs = (p[0] * np.sin(grid) - p[1] * np.cos(grid)) / den
    # the solution lies in the admissible wrap-around branch (theta > theta_m/2 + 2pi for theta_m < 0 mirrored)
    cand = grid[(np.abs(rs - 1) < 1e-4)]
    ref = cand[np.argmin(np.abs(np.interp(cand, grid, rs) - 1))]
    assert math.pi < th < 2 * math.pi
    assert th == pytest.approx(ref, abs=1e-5)


def test_angle_infeasible():
    with pytest.raises(InfeasibleError) as e:
        angle_for_radius((0.5, 0.5), 1)
    assert e.value.clause == "radius-feasibility"
    with pytest.raises(InfeasibleError):
        angle_for_radius((3, 0), 1)


@given(tangent_point())
def test_angle_recovers_bearing(sample):
    p, r, th, ell = sample
    assume(ell > 1e-3)
    assert angle_for_radius(p, r) == pytest.approx(th, abs=1e-7)


@given(tangent_point())
def test_right_turn_symmetry(sample):
    (x, y), r, th, _ = sample
    assert angle_for_radius((x, -y), -r) == pytest.approx(-angle_for_radius((x, y), r), abs=1e-12)


@given(tangent_point())
def test_round_trip(sample):
    p, r, th, ell = sample
    assume(ell > 1e-3 and abs(math.sin(th / 2)) > 1e-3)
    t = angle_for_radius(p, r)
    assert radius_for_angle(p, t, check=False) == pytest.approx(r, rel=1e-7)


def test_phase_correction_sign_rule():
    assert phase_correction(1, 1, 1) == 0
    assert phase_correction(1, -1, 1) == 2 * math.pi
    assert phase_correction(-1, -1, -1) == 0
    assert phase_correction(1, 1, -1) == -2 * math.pi


# ---- straight segment and path length


def test_straight_examples():
    assert straight_dist_sq((1, 2), 1) == pytest.approx(1)
    assert straight_dist_sq((1, 1), 1) == pytest.approx(0)
    th = angle_for_radius((4, 1), 1)
    tx, ty = turn_point(1, th)
    assert straight_dist_sq((4, 1), 1) == pytest.approx(15)
    assert (4 - tx) ** 2 + (1 - ty) ** 2 == pytest.approx(15)


@given(tangent_point())
def test_straight_identity(sample):
    p, r, _, _ = sample
    th = angle_for_radius(p, r)
    tx, ty = turn_point(r, th)
    d2 = (p[0] - tx) ** 2 + (p[1] - ty) ** 2
    assert straight_dist_sq(p, r) == pytest.approx(d2, rel=1e-9, abs=1e-9)


def test_path_length_examples():
    assert path_length((1, 2), math.pi / 2, 1) == pytest.approx(math.pi / 2 + 1)
    assert path_length((0, 2), math.pi, 1) == pytest.approx(math.pi)
    assert path_length(ARC_POINT, 1, 3.22) == pytest.approx(3.22)


def test_path_length_inconsistent():
    with pytest.raises(InfeasibleError):
        path_length((1, 2), 1.0, 1)


@given(tangent_point(), st.floats(0.05, 0.95))
def test_length_ordering(sample, frac):
    p, r1, _, ell = sample
    assume(ell > 1e-2)
    r2 = r1 * frac
    l1 = path_length(p, angle_for_radius(p, r1), r1)
    l2 = path_length(p, angle_for_radius(p, r2), r2)
    assert l1 > l2


# ---- envelope


def test_envelope_examples():
    assert in_envelope(FIG1, ARC_POINT)
    assert in_envelope(FIG1, (0, 0))
    assert not in_envelope(FIG1, (100, -100))
    assert not in_envelope(FIG1, (5, 0))


def test_envelope_far_point_dense_grid():
    rs = np.linspace(3.22, 6.89, 300)
    ths = np.linspace(2.41, 3.62, 300)
    R, T = np.meshgrid(rs, ths)
    ends = np.stack([R * np.sin(T), R * (1 - np.cos(T))])
    # every path heads into the half-plane behind its exit point; none approaches (100, -100)
    to_p = np.stack([100 - ends[0], -100 - ends[1]])
    along = to_p[0] * np.cos(T) + to_p[1] * np.sin(T)
    across = np.abs(-to_p[0] * np.sin(T) + to_p[1] * np.cos(T))
    assert not np.any((along >= 0) & (across < 1e-3))


def test_envelope_world_frame():
    spec = TurnSpec.from_tuple(10, -3, math.pi / 2, 3.22, 6.89, 2.41, 3.62, 1, 2)
    # local arc point rotated by +90 degrees and shifted
    p = (10 - ARC_POINT[1], -3 + ARC_POINT[0])
    assert in_envelope(spec, p)


def test_envelope_right_mode_is_mirror():
    right = TurnSpec.from_tuple(0, 0, 0, -6.89, -3.22, -3.62, -2.41, 1, 2)
    assert right.mode is Mode.RIGHT
    for p in [(2.0, 1.2), (-5, 6), (0, 10), (4, 4)]:
        assert in_envelope(right, (p[0], -p[1])) == in_envelope(FIG1, p)


@given(tangent_point())
def test_envelope_contains_sampled_paths(sample):
    p, r, th, _ = sample
    spec = TurnSpec.from_tuple(0, 0, 0, r * 0.9, r * 1.1, max(th - 0.01, 1e-3), min(th + 0.01, 6.28), 1, 2)
    assert in_envelope(spec, p)


def test_spec_validation():
    with pytest.raises(InfeasibleError):
        TurnSpec.from_tuple(0, 0, 0, 3, 2, 1, 2, 1, 2)
    with pytest.raises(InfeasibleError):
        TurnSpec.from_tuple(0, 0, 0, 1, 2, 1, 2, 2, 1)
    with pytest.raises(InfeasibleError):
        TurnSpec.from_tuple(0, 0, 0, -1, -2, -2, -1, 1, 2)
    either = TurnSpec.from_tuple(0, 0, 0, 2, -2, -1, 1, 1, 2)
    assert either.mode is Mode.EITHER
