"""Seeded randomness: Laplace and Gaussian draws, Laplace density.

The generator is numpy's PCG64. It passes the usual statistical batteries
but is not a cryptographic source, and floating-point Laplace noise is known
to leak through its low-order bits. Fine for experiments; a deployment would
need a hardened sampler.
"""

from __future__ import annotations

import math

import numpy as np

from .core import check_positive

# smallest representable spacing of numpy's [0, 1) doubles
_U_FLOOR = 2.0**-53

# substream ids, so a run's mechanism noise never reuses the bits that built its data
MECHANISM_STREAM = 1
DATA_STREAM = 2


class RandomSource:
    """Seeded generator shared by all stochastic operations of one run."""

    def __init__(self, seed: int = 0, stream: int | None = None):
        self.seed = int(seed)
        self.stream = stream
        key = () if stream is None else (int(stream),)
        seq = np.random.SeedSequence(self.seed, spawn_key=key)
        self._gen = np.random.Generator(np.random.PCG64(seq))

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        return self._gen.uniform(low, high, size)

    def random(self, size=None):
        return self._gen.random(size)

    def standard_normal(self, size=None):
        return self._gen.standard_normal(size)

    def spawn(self, stream: int) -> "RandomSource":
        """Independent substream; unlike ``seed + 1`` it never collides with another run's seed."""
        return RandomSource(self.seed, stream)


def _laplace_from_uniform(u, scale: float):
    # u in [0, 1) -> centred in [-0.5, 0.5); inverse CDF of Lap(0, scale)
    c = u - 0.5
    mag = np.maximum(1.0 - 2.0 * np.abs(c), _U_FLOOR)
    return -scale * np.sign(c) * np.log(mag)


def sample_laplace(scale: float, rng: RandomSource, size=None):
    """Draw from Lap(0, scale) by inverse CDF, one uniform per draw."""
    scale = check_positive(scale, "scale")
    out = _laplace_from_uniform(rng.random(size), scale)
    return float(out) if size is None else out


def sample_gaussian(variance: float, rng: RandomSource, size=None):
    """Draw from N(0, variance)."""
    variance = check_positive(variance, "variance")
    out = math.sqrt(variance) * rng.standard_normal(size)
    return float(out) if size is None else out


def laplace_density(x, scale: float):
    scale = check_positive(scale, "scale")
    return np.exp(-np.abs(x) / scale) / (2.0 * scale)


def laplace_log_density(x, scale: float):
    scale = check_positive(scale, "scale")
    return -np.abs(x) / scale - math.log(2.0 * scale)


def laplace_cdf(x, scale: float):
    x = np.asarray(x, dtype=float)
    return np.where(x < 0, 0.5 * np.exp(x / scale), 1.0 - 0.5 * np.exp(-x / scale))
