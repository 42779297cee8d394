"""Command line: ``analyze``, ``envelope`` and ``verify``.

Exit codes: 0 success, 2 parse error, 3 invariant violation, 4 verification failure.
"""

from __future__ import annotations

import argparse
import sys

from .encounter import EncounterInvariantError, EncounterParseError, dumps, load_encounter
from .partition import TilingParams
from .report import analyze, envelope_grid, svg, verify

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_VERIFY = 0, 2, 3, 4


def _point(text: str):
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}") from None
    return (x, y)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ttbconflict", description="Turn-envelope conflict timing.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    a = sub.add_parser("analyze", help="collision interval and per-region table")
    a.add_argument("file")
    a.add_argument("--tiling", type=int, help="uniform tiling with span pi/n")
    a.add_argument("--out")
    a.add_argument("--svg")

    e = sub.add_parser("envelope", help="t_e/t_l grids for one vehicle")
    e.add_argument("file")
    e.add_argument("--vehicle", choices=("own", "intruder"), default="own")
    e.add_argument("--grid", type=int, default=101)
    e.add_argument("--box", type=float, nargs=4, metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    e.add_argument("--probe", type=_point, action="append", default=[], help="x,y point (repeatable)")
    e.add_argument("--out")

    v = sub.add_parser("verify", help="Monte-Carlo and rasterization cross-checks")
    v.add_argument("file")
    v.add_argument("--n", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--eps", type=float)
    v.add_argument("--dt", type=float)
    v.add_argument("--horizon", type=float)
    v.add_argument("--no-raster", action="store_true")
    v.add_argument("--out")
    # seeded fault for testing the checker itself
    v.add_argument("--shrink-tl", type=float, help=argparse.SUPPRESS)
    return ap


def _emit(text: str, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run(args) -> int:
    enc = load_encounter(args.file)
    if args.cmd == "analyze":
        if args.tiling:
            enc = type(enc)(enc.own, enc.intruder, TilingParams.uniform(args.tiling), enc.oracle)
        report, res = analyze(enc)
        _emit(dumps(report), args.out)
        if args.svg:
            with open(args.svg, "w") as fh:
                fh.write(svg(report, res))
        return EXIT_OK
    if args.cmd == "envelope":
        grid = envelope_grid(enc.vehicle(args.vehicle), args.grid, args.box, args.probe)
        grid["vehicle"] = args.vehicle
        _emit(dumps(grid), args.out)
        return EXIT_OK
    out = verify(enc, n=args.n, seed=args.seed, eps=args.eps, dt=args.dt, horizon=args.horizon,
                 shrink_tl=args.shrink_tl, raster=not args.no_raster)
    _emit(dumps(out.summary()), args.out)
    print("verify:", "PASS" if out.passed else "FAIL", file=sys.stderr)
    return EXIT_OK if out.passed else EXIT_VERIFY


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except EncounterParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"cannot read input: {e}", file=sys.stderr)
        return EXIT_PARSE
    except EncounterInvariantError as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except NotImplementedError as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
