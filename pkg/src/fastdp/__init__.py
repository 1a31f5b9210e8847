"""Real-time differentially private release of aggregate time series.

Filtering (Kalman or particle) smooths Laplace-perturbed samples, and a PID
controller decides when to spend privacy budget on a new sample.
"""

from .core import (
    BudgetLedger,
    ContractViolation,
    InvalidInputError,
    InvalidParameterError,
    ReleaseKind,
    ReleaseRecord,
)
from .engine import AdaptiveSampling, EngineConfig, FastEngine, FixedSampling, engine_run
from .noise import RandomSource

__all__ = [
    "AdaptiveSampling",
    "BudgetLedger",
    "ContractViolation",
    "EngineConfig",
    "FastEngine",
    "FixedSampling",
    "InvalidInputError",
    "InvalidParameterError",
    "RandomSource",
    "ReleaseKind",
    "ReleaseRecord",
    "engine_run",
]
