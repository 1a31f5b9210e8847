"""Kalman filter with fixed-rate sampling: median error against the interval.

R follows the per-sample Laplace scale, (samples / alpha)**2.

    python scripts/fixed_rate.py --output fixed_rate.csv
"""

import argparse
import csv

import numpy as np

from fastdp.dataio import GeneratorSpec
from fastdp.harness import FilterParams, MethodSpec, release
from fastdp.metrics import avg_relative_error


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--intervals", default="1,2,3,5,10,20")
    ap.add_argument("--filter", choices=["kf", "pf"], default="kf")
    ap.add_argument("--output", default="fixed_rate.csv")
    args = ap.parse_args()

    params = FilterParams(R="auto")
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["interval", "median_relerr"])
        for i in (int(v) for v in args.intervals.split(",")):
            spec = MethodSpec.parse(f"fixed_{args.filter}:{i}")
            errs = []
            for s in range(args.seeds):
                x = GeneratorSpec(seed=s).generate()
                r, _ = release(spec, x, 1.0, s, params)
                errs.append(avg_relative_error(r, x))
            w.writerow([i, np.median(errs)])
            print(f"I={i}: {np.median(errs):.3f}")


if __name__ == "__main__":
    main()
