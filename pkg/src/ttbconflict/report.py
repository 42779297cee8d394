"""Analysis, envelope-grid and verification reports built on top of the solver."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import UnreachableError, point_timing
from .encounter import (
    UNITS,
    Encounter,
    encounter_dict,
    envelope_boundary,
    interval_dict,
    polygon_dict,
)
from .geometry import polygon_intersect, polygon_vertices, region_from_box
from .kinematics import InfeasibleError, TurnSpec
from .oracle import monte_carlo_collisions, rasterize_conflict_wave
from .solver import EncounterResult, encounter_interval


def analyze(enc: Encounter) -> tuple:
    """(report dict, EncounterResult)."""
    res = encounter_interval(enc.own, enc.intruder, enc.tiling)
    regions = []
    for i, row in enumerate(res.table):
        rt = row.timing
        regions.append({
            "id": i,
            "labels": [rt.own_label, rt.intr_label],
            "method": row.method,
            "interval": interval_dict(row.interval),
            "polygon": polygon_dict(rt.polygon),
            "edges": {
                "own_front": rt.own_front.to_dict(),
                "own_back": rt.own_back.to_dict(),
                "intruder_front": rt.intr_front.to_dict(),
                "intruder_back": rt.intr_back.to_dict(),
            },
        })
    report = {
        "units": UNITS,
        "encounter": encounter_dict(enc),
        "collision_free": res.safe,
        "interval": interval_dict(res.interval),
        "regions": regions,
        "envelopes": {"own": envelope_boundary(enc.own), "intruder": envelope_boundary(enc.intruder)},
    }
    return report, res


# --------------------------------------------------------------------------
# Timing contours for one vehicle


def default_box(spec: TurnSpec) -> tuple:
    R = 2.0 * max(abs(spec.r_alpha), abs(spec.r_beta))
    x, y = spec.pose.position
    return (x - R, x + R, y - R, y + R)


def _timing_or_none(spec, p):
    try:
        t = point_timing(spec, p)
    except (UnreachableError, InfeasibleError):
        return None
    return t


def envelope_grid(spec: TurnSpec, n: int, box=None, probes=()) -> dict:
    """t_e / t_l sampled on an n x n grid (None outside the envelope) plus exact probe values."""
    if n < 2:
        raise ValueError("envelope grid needs n >= 2")
    box = tuple(box) if box is not None else default_box(spec)
    xs = np.linspace(box[0], box[1], n)
    ys = np.linspace(box[2], box[3], n)
    te, tl = [], []
    for y in ys:
        row_e, row_l = [], []
        for x in xs:
            t = _timing_or_none(spec, (float(x), float(y)))
            row_e.append(None if t is None else t.t_e)
            row_l.append(None if t is None else t.t_l)
        te.append(row_e)
        tl.append(row_l)
    probe_out = []
    for p in probes:
        t = _timing_or_none(spec, p)
        probe_out.append({"point": list(p), "t_e": None if t is None else t.t_e,
                          "t_l": None if t is None else t.t_l})
    return {
        "units": UNITS,
        "box": list(box),
        "x": xs.tolist(),
        "y": ys.tolist(),
        "t_e": te,
        "t_l": tl,
        "probes": probe_out,
        "boundary": envelope_boundary(spec),
    }


# --------------------------------------------------------------------------
# Verification against the oracles


@dataclass
class VerifyOutcome:
    passed: bool
    samples: int
    collisions: int
    mc_escapes: int
    raster_checked: int
    raster_escapes: int
    interval: object
    notes: list = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "passed": self.passed,
            "samples": self.samples,
            "collisions": self.collisions,
            "mc_escapes": self.mc_escapes,
            "raster_checked": self.raster_checked,
            "raster_escapes": self.raster_escapes,
            "interval": interval_dict(self.interval),
            "notes": self.notes,
        }


def default_horizon(enc: Encounter) -> float:
    a, b = enc.own, enc.intruder
    sep = math.dist(a.pose.position, b.pose.position)
    arc = max(abs(v.r_beta * v.theta_beta) + abs(v.r_alpha * v.theta_alpha) for v in (a, b))
    return 1.2 * (sep + 2 * arc) / min(a.s_alpha, b.s_alpha)


def _clip_box(region, margin):
    verts, rays = polygon_vertices(region)
    pts = list(verts) + [o for o, _ in rays]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return (min(xs) - margin, max(xs) + margin, min(ys) - margin, max(ys) + margin)


def verify(enc: Encounter, n=None, seed=None, eps=None, dt=None, horizon=None,
           shrink_tl: float | None = None, raster: bool = True) -> VerifyOutcome:
    """Monte-Carlo and rasterization checks that nothing escapes the reported interval.

    ``shrink_tl`` corrupts the interval on purpose (test hook).
    """
    o = enc.oracle
    n = o.n if n is None else n
    seed = o.seed if seed is None else seed
    eps = o.eps if eps is None else eps
    dt = o.dt if dt is None else dt
    horizon = horizon or o.horizon or default_horizon(enc)
    res: EncounterResult = encounter_interval(enc.own, enc.intruder, enc.tiling)
    iv = res.interval
    if shrink_tl is not None and not iv.empty:
        t_l = iv.t_l if math.isfinite(iv.t_l) else horizon
        iv = type(iv)(iv.t_e, iv.t_e + shrink_tl * (t_l - iv.t_e))
    notes = []
    # near misses within eps may precede an exact collision by up to eps / s_min
    slack = eps / min(enc.own.s_alpha, enc.intruder.s_alpha) + dt
    hits = monte_carlo_collisions(enc.own, enc.intruder, n, eps, dt, horizon, seed=seed)
    if iv.empty:
        mc_escapes = len(hits)
    else:
        mc_escapes = sum(not (iv.t_e - slack <= t <= iv.t_l + slack) for t, _ in hits)
    r_checked = r_escapes = 0
    if raster:
        for row in res.table:
            rt = row.timing
            clip = None
            if not rt.polygon.bounded:
                clip = _clip_box(rt.polygon, 5.0)
                notes.append(f"region clipped to box {list(clip)}")
            min_s = min(e.s for e in rt.edges)
            cell = o.raster_cell
            rr = rasterize_conflict_wave(rt, o.raster_dt, cell, horizon, clip=clip)
            r_checked += 1
            if rr.first_touch is None:
                continue
            tol = o.raster_dt + cell / min_s
            if iv.empty or rr.first_touch < iv.t_e - tol or rr.last_touch > iv.t_l + tol:
                r_escapes += 1
    passed = mc_escapes == 0 and r_escapes == 0
    return VerifyOutcome(passed, n, len(hits), mc_escapes, r_checked, r_escapes, iv, notes)


# --------------------------------------------------------------------------
# Bare-bones SVG


def _curves(report):
    out = []
    for name in ("own", "intruder"):
        for v in report["envelopes"][name].values():
            out.extend(v if v and isinstance(v[0][0], list) else [v])
    return out


def svg(report: dict, result: EncounterResult, size: int = 600) -> str:
    """Envelope boundaries in black, conflict polygons (clipped to the view) in red."""
    curves = _curves(report)
    xs = [p[0] for c in curves for p in c]
    ys = [p[1] for c in curves for p in c]
    box = (min(xs), max(xs), min(ys), max(ys))
    view = region_from_box(*box)
    w, h = max(box[1] - box[0], 1e-9), max(box[3] - box[2], 1e-9)
    k = size / max(w, h)

    def tx(p):
        return f"{(p[0] - box[0]) * k:.3f},{(box[3] - p[1]) * k:.3f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w * k:.0f}" height="{h * k:.0f}">']
    for c in curves:
        out.append('<polyline fill="none" stroke="black" points="' + " ".join(map(tx, c)) + '"/>')
    for row in result.table:
        if row.interval.empty:
            continue
        clipped = polygon_intersect(row.timing.polygon, view)
        if clipped is None:
            continue
        verts, _ = polygon_vertices(clipped)
        out.append('<polygon fill="red" fill-opacity="0.2" stroke="red" points="'
                   + " ".join(map(tx, verts)) + '"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
