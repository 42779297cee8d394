"""Run the head-on crossing encounter end to end and compare with Monte Carlo.

    python3 scripts/fig5_encounter.py [--n 10000] [--eps 0.05]
"""

import argparse
import math
import time
from collections import Counter
from pathlib import Path

from ttbconflict.encounter import load_encounter
from ttbconflict.oracle import monte_carlo_collisions
from ttbconflict.solver import encounter_interval

ENC = Path(__file__).resolve().parents[1] / "encounters" / "fig5.json"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--file", default=str(ENC))
    ap.add_argument("--n", type=int, default=10_000)
    ap.add_argument("--eps", type=float, default=0.05)
    ap.add_argument("--dt", type=float, default=0.01)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    enc = load_encounter(args.file)

    t0 = time.perf_counter()
    res = encounter_interval(enc.own, enc.intruder, enc.tiling)
    iv = res.interval
    print(f"{len(res.table)} conflict polygons solved in {time.perf_counter() - t0:.2f}s")
    print("label pairs:", dict(Counter(f"{r.timing.own_label}/{r.timing.intr_label}" for r in res.table)))
    if iv.empty:
        print("no collision possible")
        return
    print(f"collision interval [{iv.t_e:.4f}, {iv.t_l:.4f}]")

    horizon = (iv.t_l if math.isfinite(iv.t_l) else 2 * iv.t_e) * 1.2
    t0 = time.perf_counter()
    hits = monte_carlo_collisions(enc.own, enc.intruder, args.n, args.eps, args.dt, horizon, seed=args.seed)
    print(f"Monte Carlo: {len(hits)} close approaches in {time.perf_counter() - t0:.1f}s")
    if hits:
        ts = [t for t, _ in hits]
        inside = sum(iv.t_e <= t <= iv.t_l for t in ts)
        print(f"observed times [{min(ts):.2f}, {max(ts):.2f}], inside interval {inside}/{len(ts)}")


if __name__ == "__main__":
    main()
