"""Error and wall time of the sampling-free particle filter against particle count.

    python scripts/particle_count.py --output particles.csv
"""

import argparse
import csv
import time

import numpy as np

from fastdp.dataio import GeneratorSpec
from fastdp.harness import FilterParams, MethodSpec, release
from fastdp.metrics import avg_relative_error


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--counts", default="10,100,1000,10000")
    ap.add_argument("--output", default="particles.csv")
    args = ap.parse_args()

    spec = MethodSpec.parse("pf_only")
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n_particles", "median_relerr", "median_seconds"])
        for n in (int(c) for c in args.counts.split(",")):
            errs, walls = [], []
            for s in range(args.seeds):
                x = GeneratorSpec(seed=s).generate()
                t0 = time.perf_counter()
                r, _ = release(spec, x, 1.0, s, FilterParams(n_particles=n))
                walls.append(time.perf_counter() - t0)
                errs.append(avg_relative_error(r, x))
            w.writerow([n, np.median(errs), np.median(walls)])
            print(f"N={n}: relerr {np.median(errs):.3f}, {np.median(walls):.3f}s per run")


if __name__ == "__main__":
    main()
