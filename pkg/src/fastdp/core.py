"""Shared domain types and privacy-budget accounting."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class InvalidParameterError(ValueError):
    """A numeric parameter is outside its admissible range."""


class InvalidInputError(ValueError):
    """Input data is empty or malformed."""


class ContractViolation(RuntimeError):
    """An operation was called in a state its contract forbids."""


def as_series(values: Sequence[float] | np.ndarray, name: str = "series") -> np.ndarray:
    """Return ``values`` as a 1-D float array, rejecting empty or non-finite input.

    Time series are plain float arrays indexed ``0..T-1``; this is the single
    place that checks the shape invariant.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise InvalidInputError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidInputError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains non-finite values")
    return arr


def check_positive(value: float, name: str) -> float:
    if not (value > 0) or not np.isfinite(value):
        raise InvalidParameterError(f"{name} must be a positive finite number, got {value!r}")
    return float(value)


def check_positive_int(value: int, name: str) -> int:
    if isinstance(value, bool) or int(value) != value or value < 1:
        raise InvalidParameterError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


class BudgetLedger:
    """Evenly partitioned privacy budget: ``M`` samples at ``alpha / M`` each.

    ``per_sample_scale`` is the Laplace scale ``M / alpha`` used for every
    charged sample (count queries have sensitivity 1).
    """

    def __init__(self, total_budget: float, max_samples: int):
        self.total_budget = check_positive(total_budget, "total_budget")
        self.max_samples = check_positive_int(max_samples, "max_samples")
        self.samples_used = 0

    @property
    def per_sample_scale(self) -> float:
        return self.max_samples / self.total_budget

    @property
    def per_sample_budget(self) -> float:
        return self.total_budget / self.max_samples

    @property
    def spent(self) -> float:
        return self.samples_used * self.per_sample_budget

    @property
    def remaining(self) -> float:
        return self.total_budget - self.spent

    @property
    def exhausted(self) -> bool:
        return self.samples_used >= self.max_samples

    def charge(self) -> float | None:
        """Consume one sample's budget.

        Returns the budget spent (``alpha / M``), or ``None`` once all ``M``
        samples are used; an exhausted ledger is left untouched.
        """
        if self.exhausted:
            return None
        self.samples_used += 1
        return self.per_sample_budget

    def __repr__(self) -> str:
        return (
            f"BudgetLedger(total_budget={self.total_budget}, max_samples={self.max_samples}, "
            f"samples_used={self.samples_used})"
        )


def budget_new(alpha: float, max_samples: int) -> BudgetLedger:
    return BudgetLedger(alpha, max_samples)


def budget_charge(ledger: BudgetLedger) -> float | None:
    return ledger.charge()


class ReleaseKind(str, enum.Enum):
    PRIOR = "prior"
    POSTERIOR = "posterior"
    RAW_PERTURBED = "raw_perturbed"


@dataclass(frozen=True)
class ReleaseRecord:
    timestamp: int
    released: float
    sampled: bool
    budget_spent: float
    kind: ReleaseKind

    def __post_init__(self):
        if self.sampled != (self.budget_spent > 0):
            raise ContractViolation("sampled records must carry a positive budget charge")
        if self.kind is ReleaseKind.POSTERIOR and not self.sampled:
            raise ContractViolation("a posterior release requires a sample")
