import math

import numpy as np
import pytest

from support import DISJOINT_INTRUDER, FIG1, FIG5_INTRUDER, random_region_timing
from ttbconflict.bounds import CollisionInterval
from ttbconflict.geometry import HalfPlane, Point2, make_region, region_from_box
from ttbconflict.oracle import rasterize_conflict_wave
from ttbconflict.partition import RegionTiming
from ttbconflict.solver import (
    CPKind,
    all_linear,
    critical_points,
    encounter_interval,
    point_interval,
    solve_linear_region,
    solve_region,
    union_interval,
)
from ttbconflict.waves import EdgeKind, Role, WaveEdge


def circ(cx, cy, s, c=0.0, role=Role.FRONT):
    return WaveEdge(EdgeKind.CIRCULAR, role, s, c, center=Point2(cx, cy))


def lin(n, s, c=0.0, role=Role.FRONT):
    return WaveEdge(EdgeKind.LINEAR, role, s, c, n=n)


def two_annuli():
    # both vehicles start near the left; fronts at speed 2, backs at speed 1
    box = region_from_box(1.0, 3.0, -1.0, 1.0)
    return RegionTiming(box, circ(0, 0, 2.0), circ(0, 0, 1.0, role=Role.BACK),
                        circ(0, 0.5, 2.0), circ(0, 0.5, 1.0, role=Role.BACK))


def test_point_interval_matches_definition():
    rt = two_annuli()
    p = (2.0, 0.0)
    lo, hi = point_interval(rt, p)
    assert lo == pytest.approx(max(2.0 / 2, math.hypot(2, 0.5) / 2))
    assert hi == pytest.approx(min(2.0, math.hypot(2, 0.5)))


def test_point_interval_empty_when_windows_disjoint():
    box = region_from_box(1.0, 2.0, -0.5, 0.5)
    rt = RegionTiming(box, circ(0, 0, 2.0), circ(0, 0, 1.0, role=Role.BACK),
                      circ(0, 0, 2.0, c=-10.0), circ(0, 0, 1.0, c=-15.0, role=Role.BACK))
    assert point_interval(rt, (1.5, 0.0)) is None
    assert solve_region(rt).empty


def test_two_annuli_extremes_on_boundary():
    rt = two_annuli()
    iv = solve_region(rt)
    # earliest: on the near edge where both fronts arrive together (y = 0.25)
    assert iv.t_e == pytest.approx(math.hypot(1, 0.25) / 2, abs=1e-9)
    assert iv.t_l == pytest.approx(min(math.hypot(3, 1), math.hypot(3, 1.5)), abs=1e-9)


def test_critical_points_are_inside_and_labelled():
    rt = two_annuli()
    pts = critical_points(rt)
    kinds = {c.kind for c in pts}
    assert CPKind.POLYGON_VERTEX in kinds
    for c in pts:
        assert rt.polygon.contains(c.location, 1e-8)


@pytest.mark.parametrize("seed", range(6))
def test_solver_matches_rasterization(seed):
    rng = np.random.default_rng(100 + seed)
    rt = random_region_timing(rng)
    iv = solve_region(rt)
    r = rasterize_conflict_wave(rt, 1e-3, 2e-3, 100.0)
    if iv.empty:
        assert r.first_touch is None
        return
    assert r.first_touch is not None
    assert abs(iv.t_e - r.first_touch) <= 3e-3
    assert abs(iv.t_l - r.last_touch) <= 3e-3


@pytest.mark.parametrize("seed", range(8))
def test_lp_matches_critical_points(seed):
    rng = np.random.default_rng(200 + seed)
    rt = random_region_timing(rng, kinds=("lin", "lin"))
    assert all_linear(rt)
    a, b = solve_linear_region(rt), solve_region(rt)
    assert a.empty == b.empty
    if not a.empty:
        assert a.t_e == pytest.approx(b.t_e, abs=1e-7)
        assert a.t_l == pytest.approx(b.t_l, abs=1e-7)


def test_lp_rejects_circular_edges():
    with pytest.raises(ValueError):
        solve_linear_region(two_annuli())


def test_lp_unbounded_time():
    # half-plane x >= 0, both waves move in +x: t_l unbounded
    reg = make_region([HalfPlane(-1.0, 0.0, 0.0)])
    f = lin((1.0, 0.0), 2.0)
    b = lin((1.0, 0.0), 1.0, role=Role.BACK)
    rt = RegionTiming(reg, f, b, f, b)
    assert math.isinf(solve_linear_region(rt).t_l)
    assert math.isinf(solve_region(rt).t_l)
    assert solve_region(rt).t_e == 0.0


def test_same_vehicle_collides_from_start_forever():
    iv = encounter_interval(FIG1, FIG1).interval
    assert iv.t_e == 0.0 and math.isinf(iv.t_l)


def test_disjoint_encounter_is_empty():
    res = encounter_interval(FIG1, DISJOINT_INTRUDER)
    assert res.safe and res.interval.empty


def test_fig5_swap_invariance_is_exact():
    a = encounter_interval(FIG1, FIG5_INTRUDER).interval
    b = encounter_interval(FIG5_INTRUDER, FIG1).interval
    assert (a.t_e, a.t_l) == (b.t_e, b.t_l)


def test_fig5_interval_respects_straight_line_bound():
    iv = encounter_interval(FIG1, FIG5_INTRUDER).interval
    sep = math.dist(FIG1.pose.position, FIG5_INTRUDER.pose.position)
    assert iv.t_e >= sep / (FIG1.s_beta + FIG5_INTRUDER.s_beta)
    assert math.isfinite(iv.t_l)


def test_union_interval():
    ivs = [CollisionInterval(2.0, 3.0), CollisionInterval.none(), CollisionInterval(1.0, 2.5)]
    u = union_interval(ivs)
    assert (u.t_e, u.t_l) == (1.0, 3.0)
    assert union_interval([CollisionInterval.none()]).empty
