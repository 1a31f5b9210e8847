"""Bootstrap (SIR) particle filter with a Laplace likelihood."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .core import InvalidParameterError, check_positive, check_positive_int
from .noise import RandomSource

log = logging.getLogger(__name__)

DEFAULT_PARTICLES = 1000
# half-width of the initial cloud, in units of the per-sample Laplace scale
INIT_SPREAD = 3.0
WEIGHT_SUM_TOL = 1e-9


@dataclass
class ParticleSet:
    particles: np.ndarray
    weights: np.ndarray

    @property
    def n(self) -> int:
        return self.particles.size

    def mean(self) -> float:
        return float(np.dot(self.weights, self.particles))


def pf_init(z0: float, n: int, scale: float, rng: RandomSource) -> ParticleSet:
    """Uniform cloud on ``z0 +/- 3*scale`` with equal weights."""
    n = check_positive_int(n, "n")
    scale = check_positive(scale, "scale")
    half = INIT_SPREAD * scale
    particles = rng.uniform(z0 - half, z0 + half, n)
    return ParticleSet(particles, np.full(n, 1.0 / n))


def pf_predict(ps: ParticleSet, Q: float, rng: RandomSource) -> tuple[ParticleSet, float]:
    """Move each particle by an independent N(0, Q) step; prior is the unweighted mean."""
    Q = check_positive(Q, "Q")
    moved = ps.particles + math.sqrt(Q) * rng.standard_normal(ps.n)
    return ParticleSet(moved, ps.weights), float(moved.mean())


def likelihood_weights(particles: np.ndarray, z: float, scale: float) -> np.ndarray:
    """Normalised Laplace-likelihood weights, computed in log space.

    Returns uniform weights (and logs a degeneracy event) if every weight underflows.
    """
    logw = -np.abs(z - particles) / scale
    logw -= logw.max()
    w = np.exp(logw)
    total = w.sum()
    if not np.isfinite(total) or total <= 0:
        log.warning("particle weights degenerate at z=%r; resetting to uniform", z)
        return np.full(particles.size, 1.0 / particles.size)
    return w / total


def systematic_resample(ps: ParticleSet, rng: RandomSource) -> ParticleSet:
    """Low-variance resampling: one offset ``u in [0, 1/N)`` and strides of ``1/N``."""
    n = ps.n
    if abs(ps.weights.sum() - 1.0) > WEIGHT_SUM_TOL or np.any(ps.weights < 0):
        raise InvalidParameterError("systematic_resample needs normalised non-negative weights")
    u = rng.random() / n
    idx = resample_indices(ps.weights, u)
    return ParticleSet(ps.particles[idx], np.full(n, 1.0 / n))


def resample_indices(weights: np.ndarray, offset: float) -> np.ndarray:
    n = weights.size
    strides = np.arange(n)
    # positions must stay below 1.0, otherwise searchsorted can return n
    positions = np.minimum(offset + strides / n, np.nextafter(1.0, 0.0))
    cum = np.cumsum(weights)
    cum /= cum[-1]
    # first index whose cumulative weight exceeds the position; never a zero-weight particle
    idx = np.searchsorted(cum, positions, side="right")
    # offset + j/n can round up onto a cut point it lies just below; recheck as cum*n - j > offset*n
    prev = np.maximum(idx - 1, 0)
    back = (idx > 0) & (cum[prev] * n - strides > offset * n)
    idx[back] -= 1
    return np.minimum(idx, n - 1)


def pf_correct(
    ps: ParticleSet, z: float, scale: float, rng: RandomSource
) -> tuple[ParticleSet, float]:
    """Reweight by the Laplace likelihood of ``z``, take the weighted mean, resample."""
    scale = check_positive(scale, "scale")
    weighted = ParticleSet(ps.particles, likelihood_weights(ps.particles, z, scale))
    posterior = weighted.mean()
    return systematic_resample(weighted, rng), posterior
