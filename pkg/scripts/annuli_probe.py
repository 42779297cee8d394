"""Two circular annuli and a probe triangle: critical points vs time-stepped rasterization.

    python3 scripts/annuli_probe.py
"""

from ttbconflict.geometry import HalfPlane, Point2, make_region
from ttbconflict.oracle import rasterize_conflict_wave
from ttbconflict.partition import RegionTiming
from ttbconflict.solver import _Problem, critical_points, solve_region
from ttbconflict.waves import EdgeKind, Role, WaveEdge


def ring(cx, cy, s_front, s_back):
    c = Point2(cx, cy)
    return (WaveEdge(EdgeKind.CIRCULAR, Role.FRONT, s_front, center=c),
            WaveEdge(EdgeKind.CIRCULAR, Role.BACK, s_back, center=c))


def main():
    a_f, a_b = ring(0.0, 0.0, 2.0, 1.0)
    b_f, b_b = ring(6.0, 0.0, 1.8, 1.2)
    tri = [(2.5, -1.5), (4.5, -0.5), (3.0, 2.0)]
    hps = [HalfPlane.left_of(p, (q[0] - p[0], q[1] - p[1])) for p, q in zip(tri, tri[1:] + tri[:1])]
    rt = RegionTiming(make_region(hps), a_f, a_b, b_f, b_b)

    prob = _Problem(rt)
    print("critical points with a nonempty collision window:")
    seen = set()
    for c in critical_points(rt):
        if c.location is None:
            continue
        key = (c.kind, round(c.location.x, 9), round(c.location.y, 9))
        if key in seen:
            continue
        seen.add(key)
        iv = prob.interval(c.location)
        if iv is not None:
            print(f"  {c.kind.value:<22} ({c.location.x:7.4f}, {c.location.y:7.4f})  [{iv[0]:.4f}, {iv[1]:.4f}]")
    iv = solve_region(rt)
    r = rasterize_conflict_wave(rt, 1e-3, 2e-3, 20.0)
    print(f"solver       [{iv.t_e:.4f}, {iv.t_l:.4f}]")
    print(f"rasterized   [{r.first_touch:.4f}, {r.last_touch:.4f}]  ({r.marked} marked samples)")


if __name__ == "__main__":
    main()
