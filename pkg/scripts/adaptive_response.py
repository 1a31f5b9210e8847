"""Sampling intervals chosen by the adaptive controller on a flat-then-moving series.

The first half is constant, the second a random walk. Writes every sampling
point so the interval trace can be plotted.

    python scripts/adaptive_response.py --output adaptive.csv
"""

import argparse
import csv

import numpy as np

from fastdp.dataio import gen_linear
from fastdp.harness import FilterParams, MethodSpec, release
from fastdp.noise import RandomSource


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--half", type=int, default=500)
    ap.add_argument("--Q", type=float, default=1e5)
    ap.add_argument("--start", type=float, default=1000.0)
    ap.add_argument("--output", default="adaptive.csv")
    args = ap.parse_args()

    spec = MethodSpec.parse("fast_kf")
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["seed", "k", "interval", "phase"])
        for s in range(args.seeds):
            moving = gen_linear(args.half, args.Q, args.start, RandomSource(s, 9))
            x = np.concatenate([np.full(args.half, args.start), moving])
            _, records = release(spec, x, 1.0, s, FilterParams())
            ks = [r.timestamp for r in records if r.sampled]
            for a, b in zip(ks, ks[1:]):
                w.writerow([s, a, b - a, "flat" if a < args.half else "moving"])
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
