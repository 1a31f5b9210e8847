"""Experiment harness and command line interface.

    fastdp gen   --dataset linear --length 1000 --output linear.csv
    fastdp run   --method fast_kf --input linear.csv --alpha 1 --output release.csv
    fastdp sweep --methods lpa,dft,fast_kf,fast_pf --alphas 0.01,0.1,1 --seeds 0-19 \
                 --output results.csv --summary summary.csv

Every flag can also come from a JSON file passed with ``--config``; keys are
the flag names with dashes replaced by underscores. Flags given on the
command line win over the file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .baselines import DEFAULT_DFT_COEFFICIENTS, dft_release, lpa_release
from .core import InvalidInputError, InvalidParameterError, check_positive
from .dataio import GeneratorSpec, load_csv, write_csv, write_release_log
from .engine import (
    AdaptiveSampling,
    EngineConfig,
    FixedSampling,
    FastEngine,
    fixed_rate_samples,
    released_values,
)
from .kalman import DEFAULT_Q, DEFAULT_R, suggest_R
from .metrics import DEFAULT_EVENT_FRACTION, avg_relative_error, f1_detection, l1_distance, spearman
from .noise import RandomSource
from .particle import DEFAULT_PARTICLES
from .sampler import DEFAULT_DELTA, DEFAULT_GAINS, DEFAULT_INTEGRAL_WINDOW, DEFAULT_THETA, DEFAULT_XI, PidGains

log = logging.getLogger("fastdp")

METHOD_NAMES = ("lpa", "dft", "fast_kf", "fast_pf", "kf_only", "pf_only", "fixed_kf", "fixed_pf")
METRIC_NAMES = ("relerr", "l1", "f1", "spearman")
# default sample cap as a fraction of T for the adaptive methods
DEFAULT_SAMPLE_FRACTION = {"fast_kf": 0.15, "fast_pf": 0.25}


@dataclass(frozen=True)
class MethodSpec:
    name: str
    arg: int | None = None

    @classmethod
    def parse(cls, text: str) -> "MethodSpec":
        name, _, arg = text.strip().partition(":")
        if name not in METHOD_NAMES:
            raise InvalidParameterError(f"unknown method {name!r}; choose from {METHOD_NAMES}")
        if arg and name not in ("dft", "fixed_kf", "fixed_pf"):
            raise InvalidParameterError(f"method {name!r} takes no argument")
        return cls(name, int(arg) if arg else None)

    def __str__(self) -> str:
        return self.name if self.arg is None else f"{self.name}:{self.arg}"


@dataclass(frozen=True)
class FilterParams:
    Q: float = DEFAULT_Q
    # a number, or "auto" for (samples / alpha)**2
    R: float | str = DEFAULT_R
    n_particles: int = DEFAULT_PARTICLES
    gains: tuple[float, float, float] = DEFAULT_GAINS
    integral_window: int = DEFAULT_INTEGRAL_WINDOW
    theta: float = DEFAULT_THETA
    xi: float = DEFAULT_XI
    delta: float = DEFAULT_DELTA
    budget_samples: int | None = None
    interval: int = 5
    dft_coefficients: int = DEFAULT_DFT_COEFFICIENTS


def engine_config(method: MethodSpec, T: int, alpha: float, seed: int, p: FilterParams) -> EngineConfig:
    """Translate a method name into the engine configuration it stands for."""
    filt = "particle" if method.name in ("fast_pf", "pf_only", "fixed_pf") else "kalman"
    if method.name in ("fast_kf", "fast_pf"):
        M = p.budget_samples or max(1, round(DEFAULT_SAMPLE_FRACTION[method.name] * T))
        sampling = AdaptiveSampling(
            gains=PidGains(*p.gains, integral_window=p.integral_window), theta=p.theta, xi=p.xi
        )
    elif method.name in ("kf_only", "pf_only"):
        M, sampling = T, FixedSampling(1)
    else:
        interval = method.arg or p.interval
        M, sampling = fixed_rate_samples(T, interval), FixedSampling(interval)
    M = min(M, T)
    R = suggest_R(M, alpha) if p.R == "auto" else float(p.R)
    return EngineConfig(
        alpha=alpha,
        max_samples=M,
        filter=filt,
        sampling=sampling,
        Q=p.Q,
        R=R,
        n_particles=p.n_particles,
        delta=p.delta,
        seed=seed,
    )


def release(method: MethodSpec, x: np.ndarray, alpha: float, seed: int, p: FilterParams):
    """Run one method on ``x``. Returns ``(released values, release records or None)``."""
    if method.name == "lpa":
        return lpa_release(x, alpha, RandomSource(seed)), None
    if method.name == "dft":
        d = min(method.arg or p.dft_coefficients, x.size)
        return dft_release(x, alpha, d, RandomSource(seed)), None
    engine = FastEngine(engine_config(method, x.size, alpha, seed, p))
    records = [engine.step(v) for v in x]
    return released_values(records), records


def score(r: np.ndarray, x: np.ndarray, metrics, delta: float, f1_frac: float) -> dict[str, float]:
    out = {}
    for m in metrics:
        if m == "relerr":
            out[m] = avg_relative_error(r, x, delta)
        elif m == "l1":
            out[m] = l1_distance(r, x)
        elif m == "f1":
            out[m] = f1_detection(r, x, f1_frac)
        elif m == "spearman":
            out[m] = spearman(r, x)
    return out


@dataclass
class ExperimentPlan:
    dataset: GeneratorSpec | str = field(default_factory=GeneratorSpec)
    methods: list[str] = field(default_factory=lambda: ["lpa", "fast_kf", "fast_pf"])
    alphas: list[float] = field(default_factory=lambda: [1.0])
    seeds: list[int] = field(default_factory=lambda: list(range(20)))
    metrics: list[str] = field(default_factory=lambda: ["relerr"])
    f1_frac: float = DEFAULT_EVENT_FRACTION
    params: FilterParams = field(default_factory=FilterParams)
    clamp_nonnegative: bool = False
    log_dir: str | None = None
    emit_truth: bool = False
    jobs: int = 1

    def validate(self) -> list[MethodSpec]:
        if not self.methods or not self.alphas or not self.seeds:
            raise InvalidParameterError("a plan needs at least one method, alpha and seed")
        specs = [MethodSpec.parse(m) for m in self.methods]
        for a in self.alphas:
            check_positive(a, "alpha")
        bad = [m for m in self.metrics if m not in METRIC_NAMES]
        if bad or not self.metrics:
            raise InvalidParameterError(f"unknown metrics {bad}; choose from {METRIC_NAMES}")
        if len(set(self.seeds)) != len(self.seeds):
            raise InvalidParameterError("duplicate seeds")
        return specs

    def load_data(self) -> np.ndarray:
        if isinstance(self.dataset, GeneratorSpec):
            return self.dataset.generate()
        return load_csv(self.dataset)


def _one_run(args):
    plan, method, alpha, seed, x = args
    t0 = time.perf_counter()
    r, records = release(method, x, alpha, seed, plan.params)
    wall = time.perf_counter() - t0
    if plan.clamp_nonnegative:
        r = np.maximum(r, 0.0)
    row = {"method": str(method), "alpha": alpha, "seed": seed}
    row.update(score(r, x, plan.metrics, plan.params.delta, plan.f1_frac))
    if records is not None:
        row["samples"] = sum(rec.sampled for rec in records)
    if plan.log_dir and records is not None:
        path = Path(plan.log_dir) / f"{method}_a{alpha:g}_s{seed}.csv".replace(":", "-")
        write_release_log(path, records, truth=x if plan.emit_truth else None)
    return row, wall


def run_experiment(plan: ExperimentPlan) -> tuple[list[dict], list[float]]:
    """Run every (method, alpha, seed) cell of the plan.

    Returns rows sorted by (method, alpha, seed) and the matching wall times.
    """
    specs = plan.validate()
    x = plan.load_data()
    if plan.log_dir:
        Path(plan.log_dir).mkdir(parents=True, exist_ok=True)
    tasks = [(plan, m, float(a), int(s), x) for m in specs for a in plan.alphas for s in plan.seeds]
    if plan.jobs > 1:
        with ProcessPoolExecutor(plan.jobs) as pool:
            results = list(pool.map(_one_run, tasks))
    else:
        results = [_one_run(t) for t in tasks]
    results.sort(key=lambda rw: (rw[0]["method"], rw[0]["alpha"], rw[0]["seed"]))
    return [r for r, _ in results], [w for _, w in results]


def summarize(rows: list[dict], metrics=None) -> list[dict]:
    """Median and interquartile range of each metric per (method, alpha)."""
    if not rows:
        raise InvalidInputError("cannot summarize an empty results table")
    metrics = metrics or [m for m in METRIC_NAMES if m in rows[0]]
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        groups.setdefault((row["method"], row["alpha"]), []).append(row)
    out = []
    for (method, alpha), group in sorted(groups.items()):
        s = {"method": method, "alpha": alpha, "runs": len(group)}
        for m in metrics:
            vals = np.array([g[m] for g in group], dtype=float)
            q1, med, q3 = np.nanpercentile(vals, [25, 50, 75])
            s[f"{m}_median"] = float(med)
            s[f"{m}_iqr"] = float(q3 - q1)
        out.append(s)
    return out


def table_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    cols = list(rows[0])
    for row in rows:
        cols += [c for c in row if c not in cols]
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


# --- command line -----------------------------------------------------------


def _floats(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _seeds(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        lo, sep, hi = part.partition("-")
        out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
    return out


def _gains(text: str) -> tuple[float, float, float]:
    vals = _floats(text)
    if len(vals) != 3:
        raise argparse.ArgumentTypeError("--gains takes three comma-separated numbers Cp,Ci,Cd")
    return tuple(vals)


def _r_value(text: str) -> float | str:
    return "auto" if text == "auto" else float(text)


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="CSV series (timestamp,value); overrides --dataset")
    p.add_argument("--dataset", choices=("linear", "logistic", "sinusoidal"), default="linear")
    p.add_argument("--length", type=int, default=1000)
    p.add_argument("--data-seed", type=int, default=0)
    p.add_argument("--process-noise", type=float, default=DEFAULT_Q, help="Q of the linear generator")
    p.add_argument("--start", type=float, default=1000.0, help="x0 of the linear generator")


def _add_method_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--Q", type=float, default=DEFAULT_Q, help="filter process noise")
    p.add_argument("--R", type=_r_value, default=DEFAULT_R, help="Kalman measurement noise or 'auto'")
    p.add_argument("--particles", type=int, default=DEFAULT_PARTICLES)
    p.add_argument("--budget-samples", type=int, help="max samples M for fast_kf / fast_pf")
    p.add_argument("--interval", type=int, default=5, help="interval for fixed_kf / fixed_pf")
    p.add_argument("--gains", type=_gains, default=DEFAULT_GAINS)
    p.add_argument("--integral-window", type=int, default=DEFAULT_INTEGRAL_WINDOW)
    p.add_argument("--theta", type=float, default=DEFAULT_THETA)
    p.add_argument("--xi", type=float, default=DEFAULT_XI)
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    p.add_argument("--dft-coefficients", type=int, default=DEFAULT_DFT_COEFFICIENTS)
    p.add_argument("--clamp-nonnegative", action="store_true")
    p.add_argument("--emit-truth", action="store_true", help="include raw values in release logs (evaluation only)")
    p.add_argument("--metrics", default="relerr,l1,f1,spearman")
    p.add_argument("--f1-frac", type=float, default=DEFAULT_EVENT_FRACTION)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fastdp", description=__doc__.split("\n")[0])
    parser.add_argument("--config", help="JSON file with default flag values")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a synthetic series to CSV")
    _add_data_flags(gen)
    gen.add_argument("--output", required=True)

    run = sub.add_parser("run", help="release one series with one method")
    _add_data_flags(run)
    _add_method_flags(run)
    run.add_argument("--method", default="fast_kf")
    run.add_argument("--alpha", type=float, default=1.0)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--output", help="release log CSV")
    run.add_argument("--manifest", help="JSON manifest path (default: <output>.json)")

    sweep = sub.add_parser("sweep", help="methods x alphas x seeds, scored")
    _add_data_flags(sweep)
    _add_method_flags(sweep)
    sweep.add_argument("--methods", default="lpa,dft,fast_kf,fast_pf")
    sweep.add_argument("--alphas", default="1")
    sweep.add_argument("--seeds", default="0-19")
    sweep.add_argument("--output", required=True, help="results table CSV")
    sweep.add_argument("--summary", help="summary table CSV")
    sweep.add_argument("--log-dir", help="write per-run release logs here")
    sweep.add_argument("--jobs", type=int, default=1)
    parser.subcommands = {"gen": gen, "run": run, "sweep": sweep}
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
        # re-parse so explicit flags override the file
        for sub in parser.subcommands.values():
            sub.set_defaults(**cfg)
        args = parser.parse_args(argv)
    if isinstance(getattr(args, "gains", None), list):
        args.gains = tuple(args.gains)
    return args


def dataset_from_args(args) -> GeneratorSpec | str:
    if args.input:
        return args.input
    return GeneratorSpec(
        kind=args.dataset, length=args.length, seed=args.data_seed, Q=args.process_noise, x0=args.start
    )


def params_from_args(args) -> FilterParams:
    return FilterParams(
        Q=args.Q,
        R=args.R,
        n_particles=args.particles,
        gains=tuple(args.gains),
        integral_window=args.integral_window,
        theta=args.theta,
        xi=args.xi,
        delta=args.delta,
        budget_samples=args.budget_samples,
        interval=args.interval,
        dft_coefficients=args.dft_coefficients,
    )


def _manifest(args, extra: dict) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "config"}
    return {"command": args.command, "config": cfg, **extra}


def _cmd_gen(args) -> None:
    spec = dataset_from_args(args)
    if isinstance(spec, str):
        raise InvalidParameterError("gen writes synthetic data; --input makes no sense here")
    write_csv(args.output, spec.generate())


def _cmd_run(args) -> None:
    plan = ExperimentPlan(
        dataset=dataset_from_args(args),
        methods=[args.method],
        alphas=[args.alpha],
        seeds=[args.seed],
        metrics=args.metrics.split(","),
        f1_frac=args.f1_frac,
        params=params_from_args(args),
        clamp_nonnegative=args.clamp_nonnegative,
    )
    method = plan.validate()[0]
    x = plan.load_data()
    t0 = time.perf_counter()
    r, records = release(method, x, args.alpha, args.seed, plan.params)
    wall = time.perf_counter() - t0
    if args.clamp_nonnegative:
        r = np.maximum(r, 0.0)
    scores = score(r, x, plan.metrics, plan.params.delta, plan.f1_frac)
    if args.output:
        if records is None:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write("k,r\n" + "".join(f"{k},{v!r}\n" for k, v in enumerate(map(float, r))))
        else:
            if args.clamp_nonnegative:
                records = [replace(rec, released=max(rec.released, 0.0)) for rec in records]
            write_release_log(args.output, records, truth=x if args.emit_truth else None)
        manifest = args.manifest or str(Path(args.output).with_suffix(".json"))
        extra = {"metrics": scores, "wall_time_s": wall, "length": int(x.size)}
        if records is not None:
            extra["engine"] = asdict(engine_config(method, x.size, args.alpha, args.seed, plan.params))
        Path(manifest).write_text(json.dumps(_manifest(args, extra), indent=2, sort_keys=True) + "\n")
    print(json.dumps({"method": str(method), "alpha": args.alpha, "seed": args.seed, **scores}))


def _cmd_sweep(args) -> None:
    plan = ExperimentPlan(
        dataset=dataset_from_args(args),
        methods=[m for m in args.methods.split(",") if m],
        alphas=_floats(args.alphas),
        seeds=_seeds(args.seeds),
        metrics=args.metrics.split(","),
        f1_frac=args.f1_frac,
        params=params_from_args(args),
        clamp_nonnegative=args.clamp_nonnegative,
        log_dir=args.log_dir,
        emit_truth=args.emit_truth,
        jobs=args.jobs,
    )
    rows, walls = run_experiment(plan)
    Path(args.output).write_text(table_csv(rows))
    if args.summary:
        Path(args.summary).write_text(table_csv(summarize(rows, plan.metrics)))
    timings = [
        {"method": r["method"], "alpha": r["alpha"], "seed": r["seed"], "wall_time_s": w}
        for r, w in zip(rows, walls)
    ]
    manifest = Path(args.output).with_suffix(".json")
    manifest.write_text(json.dumps(_manifest(args, {"timings": timings}), indent=2, sort_keys=True) + "\n")
    log.info("wrote %d rows to %s", len(rows), args.output)


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    commands = {"gen": _cmd_gen, "run": _cmd_run, "sweep": _cmd_sweep}
    try:
        commands[args.command](args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"fastdp: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
