"""Earliest/latest arrival-time contours for the reference left turn.

Writes the sampled t_e/t_l grids as JSON and a two-panel SVG heat map.

    python3 scripts/fig9_contours.py --grid 151 --out-dir out/
"""

import argparse
import math
from pathlib import Path

from ttbconflict.encounter import dumps
from ttbconflict.kinematics import TurnSpec
from ttbconflict.report import envelope_grid

SPEC = TurnSpec.from_tuple(0, 0, 0, 3.22, 6.89, 2.41, 3.62, 1, 2)


def colour(v, lo, hi):
    u = (v - lo) / (hi - lo) if hi > lo else 0.0
    return f"rgb({int(255 * u)},{int(80 + 100 * (1 - abs(2 * u - 1)))},{int(255 * (1 - u))})"


def panel(grid, key, x0, size):
    vals = [v for row in grid[key] for v in row if v is not None]
    lo, hi = min(vals), max(vals)
    n = len(grid["x"])
    cell = size / n
    out = []
    for j, row in enumerate(grid[key]):
        for i, v in enumerate(row):
            if v is None:
                continue
            y = size - (j + 1) * cell
            out.append(f'<rect x="{x0 + i * cell:.2f}" y="{y:.2f}" width="{cell:.2f}" height="{cell:.2f}" '
                       f'fill="{colour(v, lo, hi)}"/>')
    out.append(f'<text x="{x0 + 5}" y="15" font-size="12">{key} in [{lo:.2f}, {hi:.2f}]</text>')
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid", type=int, default=151)
    ap.add_argument("--out-dir", default=".")
    args = ap.parse_args()
    probe = (3.22 * math.sin(1), 3.22 * (1 - math.cos(1)))
    grid = envelope_grid(SPEC, args.grid, box=(-16, 10, -6, 20), probes=[probe])
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "fig9_grid.json").write_text(dumps(grid))
    size = 400
    body = panel(grid, "t_e", 0, size) + panel(grid, "t_l", size + 10, size)
    svg = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * size + 10}" height="{size}">'] + body + ["</svg>"]
    (out / "fig9_contours.svg").write_text("\n".join(svg) + "\n")
    pr = grid["probes"][0]
    print(f"t_e at the minimum-radius arc point {probe[0]:.4f},{probe[1]:.4f}: {pr['t_e']:.6f}")
    print(f"wrote {out / 'fig9_grid.json'} and {out / 'fig9_contours.svg'}")


if __name__ == "__main__":
    main()
