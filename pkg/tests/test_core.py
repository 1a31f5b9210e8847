import pytest
from hypothesis import given
from hypothesis import strategies as st

from fastdp.core import (
    BudgetLedger,
    ContractViolation,
    InvalidInputError,
    InvalidParameterError,
    ReleaseKind,
    ReleaseRecord,
    as_series,
    budget_charge,
    budget_new,
)


@pytest.mark.parametrize(
    "alpha, M, scale", [(1.0, 10, 10.0), (1.0, 1, 1.0), (0.1, 150, 1500.0)]
)
def test_budget_new_scale(alpha, M, scale):
    ledger = budget_new(alpha, M)
    assert ledger.samples_used == 0
    assert ledger.per_sample_scale == pytest.approx(scale, rel=1e-12)


@pytest.mark.parametrize("alpha, M", [(0.0, 10), (-1.0, 10), (1.0, 0), (1.0, -3), (1.0, 2.5)])
def test_budget_new_rejects_bad_parameters(alpha, M):
    with pytest.raises(InvalidParameterError):
        budget_new(alpha, M)


def test_exhaustion_after_M_charges():
    ledger = budget_new(1.0, 10)
    for _ in range(10):
        assert budget_charge(ledger) == pytest.approx(0.1)
    assert budget_charge(ledger) is None
    assert ledger.samples_used == 10


def test_partial_spend():
    ledger = budget_new(1.0, 10)
    for _ in range(3):
        ledger.charge()
    assert ledger.spent == pytest.approx(0.3)
    assert ledger.remaining == pytest.approx(0.7)


def test_single_sample_consumes_everything():
    ledger = budget_new(1.0, 1)
    assert ledger.charge() == 1.0
    assert ledger.exhausted
    assert ledger.spent == 1.0


@given(
    alpha=st.floats(1e-4, 1e3),
    M=st.integers(1, 200),
    attempts=st.integers(0, 400),
)
def test_spend_never_exceeds_budget(alpha, M, attempts):
    ledger = BudgetLedger(alpha, M)
    used_before = 0
    for _ in range(attempts):
        ledger.charge()
        assert ledger.samples_used - used_before in (0, 1)
        used_before = ledger.samples_used
    assert ledger.samples_used == min(M, attempts)
    assert ledger.spent <= alpha * (1 + 1e-12)


def test_release_record_invariants():
    ReleaseRecord(0, 1.0, True, 0.1, ReleaseKind.POSTERIOR)
    ReleaseRecord(1, 1.0, False, 0.0, ReleaseKind.PRIOR)
    with pytest.raises(ContractViolation):
        ReleaseRecord(2, 1.0, True, 0.0, ReleaseKind.POSTERIOR)
    with pytest.raises(ContractViolation):
        ReleaseRecord(3, 1.0, False, 0.0, ReleaseKind.POSTERIOR)


def test_as_series_rejects_empty_and_nan():
    with pytest.raises(InvalidInputError):
        as_series([])
    with pytest.raises(InvalidInputError):
        as_series([1.0, float("nan")])
    assert as_series([1, 2]).dtype == float
