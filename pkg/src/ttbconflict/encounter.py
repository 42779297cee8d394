"""Encounter files and reports (JSON)."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

from .geometry import polygon_vertices
from .kinematics import InfeasibleError, Mode, PathParams, TurnSpec, position_at_distance
from .partition import TilingParams

UNITS = {"angle": "rad", "length": "length", "speed": "length/time", "time": "time"}
VEHICLE_FIELDS = ("x0", "y0", "theta0", "r_min", "r_max", "theta_min", "theta_max", "s_min", "s_max")
VEHICLES = ("own", "intruder")


class EncounterParseError(ValueError):
    def __init__(self, message: str, field: str = "", line: int | None = None):
        where = f" (line {line})" if line else ""
        super().__init__(f"{message}{where}")
        self.field = field
        self.line = line


class EncounterInvariantError(ValueError):
    def __init__(self, vehicle: str, clause: str, message: str):
        super().__init__(f"{vehicle}: {message}")
        self.vehicle = vehicle
        self.clause = clause


@dataclass(frozen=True)
class OracleSettings:
    n: int = 10000
    seed: int = 0
    eps: float = 0.05
    dt: float = 0.01
    horizon: float | None = None
    raster_dt: float = 1e-3
    raster_cell: float = 0.05


@dataclass(frozen=True)
class Encounter:
    own: TurnSpec
    intruder: TurnSpec
    tiling: TilingParams | None = None
    oracle: OracleSettings = field(default_factory=OracleSettings)

    def vehicle(self, name: str) -> TurnSpec:
        return self.own if name == "own" else self.intruder


# --------------------------------------------------------------------------
# Parsing


def _line_of(text: str, vehicle: str | None, key: str) -> int | None:
    start = 0
    if vehicle:
        start = text.find(f'"{vehicle}"')
        if start < 0:
            return None
    pos = text.find(f'"{key}"', start)
    return text.count("\n", 0, pos) + 1 if pos >= 0 else None


def _number(block, key, vehicle, text):
    if key not in block:
        raise EncounterParseError(f"{vehicle}: missing field '{key}'", key, _line_of(text, vehicle, vehicle))
    v = block[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise EncounterParseError(f"{vehicle}: field '{key}' must be a finite number", key, _line_of(text, vehicle, key))
    return float(v)


def _vehicle(block, name, text) -> TurnSpec:
    if not isinstance(block, dict):
        raise EncounterParseError(f"'{name}' must be an object", name, _line_of(text, None, name))
    vals = [_number(block, k, name, text) for k in VEHICLE_FIELDS]
    mode = block.get("mode")
    if mode is not None:
        try:
            mode = Mode(mode)
        except ValueError:
            raise EncounterParseError(f"{name}: unknown mode {mode!r}", "mode", _line_of(text, name, "mode")) from None
    try:
        return TurnSpec.from_tuple(*vals, mode=mode)
    except InfeasibleError as e:
        raise EncounterInvariantError(name, e.clause, str(e)) from None


def parse_encounter(text: str) -> Encounter:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise EncounterParseError(f"invalid JSON: {e.msg}", "", e.lineno) from None
    if not isinstance(doc, dict):
        raise EncounterParseError("top level must be an object")
    for name in VEHICLES:
        if name not in doc:
            raise EncounterParseError(f"missing vehicle block '{name}'", name)
    own, intr = (_vehicle(doc[name], name, text) for name in VEHICLES)
    tiling = None
    if doc.get("tiling") is not None:
        t = doc["tiling"]
        try:
            if isinstance(t, int):
                tiling = TilingParams.uniform(t)
            else:
                t = dict(t)
                if "max_gap" in t and t["max_gap"] is None:
                    t["max_gap"] = math.inf
                tiling = TilingParams(**t)
        except (TypeError, ValueError) as e:
            raise EncounterParseError(f"bad tiling: {e}", "tiling", _line_of(text, None, "tiling")) from None
    oracle = OracleSettings()
    if doc.get("oracle") is not None:
        try:
            oracle = OracleSettings(**doc["oracle"])
        except TypeError as e:
            raise EncounterParseError(f"bad oracle settings: {e}", "oracle", _line_of(text, None, "oracle")) from None
    return Encounter(own, intr, tiling, oracle)


def load_encounter(path) -> Encounter:
    with open(path) as fh:
        return parse_encounter(fh.read())


# --------------------------------------------------------------------------
# Serialization


def vehicle_dict(spec: TurnSpec) -> dict:
    return {
        "x0": spec.pose.position.x,
        "y0": spec.pose.position.y,
        "theta0": spec.pose.heading,
        "r_min": spec.r_alpha,
        "r_max": spec.r_beta,
        "theta_min": spec.theta_alpha,
        "theta_max": spec.theta_beta,
        "s_min": spec.s_alpha,
        "s_max": spec.s_beta,
        "mode": spec.mode.value,
    }


def encounter_dict(enc: Encounter) -> dict:
    d = {"units": UNITS, "own": vehicle_dict(enc.own), "intruder": vehicle_dict(enc.intruder)}
    if enc.tiling is not None:
        d["tiling"] = {k: (v if math.isfinite(v) else None) for k, v in asdict(enc.tiling).items()}
    d["oracle"] = asdict(enc.oracle)
    return d


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"


def dump_encounter(enc: Encounter) -> str:
    return dumps(encounter_dict(enc))


# --------------------------------------------------------------------------
# Report pieces


def interval_dict(iv) -> dict | None:
    if iv.empty:
        return None
    unbounded = math.isinf(iv.t_l)
    return {"t_e": iv.t_e, "t_l": None if unbounded else iv.t_l, "unbounded": unbounded}


def polygon_dict(region) -> dict:
    verts, rays = polygon_vertices(region)
    return {
        "bounded": bool(region.bounded),
        "vertices": [list(v) for v in verts],
        "rays": [{"origin": list(o), "angle": a} for o, a in rays],
    }


def _curve(spec: TurnSpec, r: float, theta: float, extent: float, n: int = 64) -> list:
    """Arc of radius r through heading change theta, then the tangent for ``extent``."""
    ys = 1.0 if r > 0 else -1.0
    if theta == 0:
        pts = [(0.0, 0.0), (extent, 0.0)]
        return _to_world(spec, pts)
    path = PathParams(abs(r), abs(theta))
    arc = abs(r * theta)
    pts = [position_at_distance(path, arc * k / n) for k in range(n + 1)]
    pts.append(position_at_distance(path, arc + extent))
    return _to_world(spec, [(x, ys * y) for x, y in pts])


def _to_world(spec, pts):
    g = spec.pose
    c, s = math.cos(g.heading), math.sin(g.heading)
    return [[g.position.x + c * x - s * y, g.position.y + s * x + c * y] for x, y in pts]


def envelope_boundary(spec: TurnSpec, extent: float | None = None) -> dict:
    """Inner and outer boundary curves of the envelope, straight legs cut at ``extent``."""
    extent = extent if extent is not None else 2.0 * max(abs(spec.r_alpha), abs(spec.r_beta))
    if spec.mode is Mode.EITHER:
        return {
            "left": [_curve(spec, spec.r_alpha, spec.theta_beta, extent)],
            "right": [_curve(spec, spec.r_beta, spec.theta_alpha, extent)],
        }
    if spec.mode is Mode.LEFT:
        inner = (spec.r_alpha, spec.theta_beta)
        outer = (spec.r_beta, spec.theta_alpha)
    else:
        inner = (spec.r_beta, spec.theta_alpha)
        outer = (spec.r_alpha, spec.theta_beta)
    return {"inner": _curve(spec, *inner, extent), "outer": _curve(spec, *outer, extent)}
