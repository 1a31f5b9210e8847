"""Utility of every release method across privacy budgets on one dataset.

Thin wrapper over the harness sweep; writes per-run rows and a median/IQR summary.

    python scripts/utility_vs_alpha.py --dataset sinusoidal --output utility.csv
"""

import argparse
import csv

from fastdp.dataio import GeneratorSpec
from fastdp.harness import ExperimentPlan, run_experiment, summarize, table_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dataset", choices=["linear", "logistic", "sinusoidal"], default="linear")
    ap.add_argument("--alphas", default="0.1,0.5,1,2")
    ap.add_argument("--methods", default="lpa,dft,fast_kf,fast_pf")
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--output", default="utility.csv")
    args = ap.parse_args()

    plan = ExperimentPlan(
        dataset=GeneratorSpec(args.dataset),
        methods=args.methods.split(","),
        alphas=[float(a) for a in args.alphas.split(",")],
        seeds=list(range(args.seeds)),
        metrics=["relerr", "f1", "spearman"],
    )
    rows, _ = run_experiment(plan)
    with open(args.output, "w", newline="") as fh:
        fh.write(table_csv(rows))
    summary = summarize(rows, plan.metrics)
    path = args.output.replace(".csv", "_summary.csv")
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(summary[0]))
        w.writeheader()
        w.writerows(summary)
    for s in summary:
        print(s["method"], s["alpha"], round(s["relerr_median"], 4))


if __name__ == "__main__":
    main()
