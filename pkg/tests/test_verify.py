import logging

import numpy as np
import pytest

import xswap.verify
from xswap.config import VERIFY_BOUND
from xswap.swap import SwapOutcome, SwapOutcomeSet, swap_outcomes
from xswap.utils import logger
from xswap.verify import DEVIATION_COLUMNS, OracleVerifier
from xswap.xstate import XState

logger.setLevel(logging.CRITICAL)


def wrong_outcomes(x, xp):
    """ Closed form with the phi coherence conjugated, wrong for complex inputs """
    outcome_set = swap_outcomes(x, xp)
    outcomes = []
    for o in outcome_set:
        state = XState(*o.state.diagonal, o14=np.conj(o.state.o14), o23=o.state.o23)
        outcomes.append(SwapOutcome(o.label, o.probability, state, o.concurrence))
    return SwapOutcomeSet(tuple(outcomes))


def test_verify_passes():
    report = OracleVerifier(n=1000, seed=105).run()
    assert report.n_cases == 2000
    assert report.passed
    assert set(report.max_deviations) == set(DEVIATION_COLUMNS)
    assert all(v <= VERIFY_BOUND for v in report.max_deviations.values())


def test_verify_sample_cases_deterministic():
    cases = OracleVerifier(n=5, seed=3).sample_cases()
    assert cases == OracleVerifier(n=5, seed=3).sample_cases()
    assert [equal for _, _, equal in cases] == [False] * 5 + [True] * 5
    assert all(x == xp for x, xp, equal in cases if equal)


def test_verify_compute_stats():
    stats = OracleVerifier(n=10, seed=1, n_jobs=2).compute_stats()
    assert list(stats.columns) == DEVIATION_COLUMNS + ["equal_input"]
    assert len(stats.index) == 20
    assert (stats[DEVIATION_COLUMNS] <= VERIFY_BOUND).all().all()


def test_verify_detects_wrong_closed_form():
    report = OracleVerifier(n=50, seed=2, outcomes_fn=wrong_outcomes).run()
    assert not report.passed
    assert report.max_deviations["matrix_deviation"] > VERIFY_BOUND


def test_verify_monkeypatched_closed_form(monkeypatch):
    monkeypatch.setattr(xswap.verify, "swap_outcomes", wrong_outcomes)
    assert not OracleVerifier(n=20, seed=4).run().passed


def test_verify_invalid_n():
    with pytest.raises(ValueError):
        OracleVerifier(n=0)
