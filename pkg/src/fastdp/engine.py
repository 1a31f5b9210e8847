"""Streaming release loop: predict, sample, perturb, correct, release, adapt."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .core import (
    BudgetLedger,
    InvalidParameterError,
    ReleaseKind,
    ReleaseRecord,
    as_series,
    check_positive,
    check_positive_int,
)
from .kalman import DEFAULT_Q, DEFAULT_R, kf_correct, kf_init, kf_predict
from .noise import MECHANISM_STREAM, RandomSource, sample_laplace
from .particle import DEFAULT_PARTICLES, pf_correct, pf_init, pf_predict
from .sampler import (
    DEFAULT_DELTA,
    DEFAULT_THETA,
    DEFAULT_XI,
    PidGains,
    SamplerState,
    adaptive_step,
    feedback_error,
    fixed_is_sampling_point,
)


@dataclass(frozen=True)
class FixedSampling:
    interval: int = 1

    def __post_init__(self):
        check_positive_int(self.interval, "interval")


@dataclass(frozen=True)
class AdaptiveSampling:
    gains: PidGains = field(default_factory=PidGains)
    theta: float = DEFAULT_THETA
    xi: float = DEFAULT_XI
    initial_interval: int = 1


@dataclass(frozen=True)
class EngineConfig:
    alpha: float = 1.0
    max_samples: int = 150
    filter: Literal["kalman", "particle"] = "kalman"
    sampling: FixedSampling | AdaptiveSampling = field(default_factory=AdaptiveSampling)
    Q: float = DEFAULT_Q
    R: float = DEFAULT_R
    n_particles: int = DEFAULT_PARTICLES
    delta: float = DEFAULT_DELTA
    seed: int = 0

    def __post_init__(self):
        check_positive(self.alpha, "alpha")
        check_positive_int(self.max_samples, "max_samples")
        check_positive(self.Q, "Q")
        check_positive(self.R, "R")
        check_positive_int(self.n_particles, "n_particles")
        check_positive(self.delta, "delta")
        if self.filter not in ("kalman", "particle"):
            raise InvalidParameterError(f"unknown filter {self.filter!r}")


def fixed_rate_samples(T: int, interval: int) -> int:
    """Sample budget ``ceil(T / I)`` for fixed-rate sampling over ``T`` steps."""
    return math.ceil(T / interval)


class LaplaceMechanism:
    """The only component that reads raw values; every call is logged by scale."""

    def __init__(self, rng: RandomSource):
        self.rng = rng
        self.scales: list[float] = []

    @property
    def calls(self) -> int:
        return len(self.scales)

    def perturb(self, value: float, scale: float) -> float:
        self.scales.append(scale)
        return value + sample_laplace(scale, self.rng)


class FastEngine:
    """One stream's release state. Feed true values with :meth:`step`, one per timestamp."""

    def __init__(self, config: EngineConfig):
        self.config = config
        self.ledger = BudgetLedger(config.alpha, config.max_samples)
        self.rng = RandomSource(config.seed)
        self.mechanism = LaplaceMechanism(self.rng.spawn(MECHANISM_STREAM))
        self.filter_state = None
        if isinstance(config.sampling, AdaptiveSampling):
            s = config.sampling
            self.sampler: SamplerState | None = SamplerState(
                gains=s.gains, theta=s.theta, xi=s.xi, interval=s.initial_interval
            )
        else:
            self.sampler = None
        self.k = 0
        self.log: list[ReleaseRecord] = []

    def _is_sampling_point(self) -> bool:
        if self.sampler is None:
            return fixed_is_sampling_point(self.k, self.config.sampling.interval)
        _, due = adaptive_step(self.sampler, self.k)
        return due

    def _predict(self) -> float:
        cfg = self.config
        if cfg.filter == "kalman":
            self.filter_state, prior = kf_predict(self.filter_state)
        else:
            self.filter_state, prior = pf_predict(self.filter_state, cfg.Q, self.rng)
        return prior

    def _correct(self, z: float) -> float:
        cfg = self.config
        if cfg.filter == "kalman":
            self.filter_state, post = kf_correct(self.filter_state, z)
        else:
            self.filter_state, post = pf_correct(
                self.filter_state, z, self.ledger.per_sample_scale, self.rng
            )
        return post

    def _start(self, z0: float) -> None:
        cfg = self.config
        if cfg.filter == "kalman":
            self.filter_state = kf_init(z0, cfg.Q, cfg.R)
        else:
            self.filter_state = pf_init(z0, cfg.n_particles, self.ledger.per_sample_scale, self.rng)

    def step(self, x_k: float) -> ReleaseRecord:
        cfg = self.config
        started = self.filter_state is not None
        prior = self._predict() if started else None
        sample = self._is_sampling_point() and not self.ledger.exhausted

        if not started and not sample:
            # only reachable with a schedule that skips k=0; nothing to release yet
            raise InvalidParameterError("the first timestamp must be a sampling point")

        if sample:
            spent = self.ledger.charge()
            z = self.mechanism.perturb(x_k, self.ledger.per_sample_scale)
            if started:
                released = self._correct(z)
                kind = ReleaseKind.POSTERIOR
                error = feedback_error(released, prior, cfg.delta)
            else:
                # nothing to predict from: release the measurement itself
                self._start(z)
                released = z
                kind = (
                    ReleaseKind.POSTERIOR if cfg.filter == "kalman" else ReleaseKind.RAW_PERTURBED
                )
                error = 0.0
            if self.sampler is not None:
                adaptive_step(self.sampler, self.k, error)
            record = ReleaseRecord(self.k, float(released), True, spent, kind)
        else:
            record = ReleaseRecord(self.k, float(prior), False, 0.0, ReleaseKind.PRIOR)

        self.log.append(record)
        self.k += 1
        return record


def engine_run(config: EngineConfig, x) -> list[ReleaseRecord]:
    x = as_series(x)
    engine = FastEngine(config)
    return [engine.step(v) for v in x]


def released_values(records: list[ReleaseRecord]) -> np.ndarray:
    return np.array([r.released for r in records])
