import logging

import numpy as np
import pytest

from xswap.sample import full_coherence, make_rng, random_xstate, sample_xstate, sample_xstates
from xswap.utils import SamplerCapError, logger
from xswap.xstate import EntanglementRegime, coherence_bounds, entanglement_regime, validate

logger.setLevel(logging.CRITICAL)


def test_sample_valid_states():
    rng = make_rng(1)
    for _ in range(1000):
        assert validate(random_xstate(rng)).passed


def test_sample_deterministic():
    assert sample_xstates(20, seed=42) == sample_xstates(20, seed=42)
    assert sample_xstates(20, seed=42) != sample_xstates(20, seed=43)


def test_sample_constraints():
    for x in sample_xstates(200, seed=5, constraint="entangled"):
        assert entanglement_regime(x) is not EntanglementRegime.SEPARABLE
    for x in sample_xstates(200, seed=5, constraint="separable"):
        assert entanglement_regime(x) is EntanglementRegime.SEPARABLE


def test_sample_cap():
    with pytest.raises(SamplerCapError) as e:
        sample_xstate(make_rng(0), "entangled", max_draws=0)
    assert e.value.exit_code == 5


def test_sample_invalid_arguments():
    with pytest.raises(ValueError):
        sample_xstate(make_rng(0), "pure")
    with pytest.raises(ValueError):
        sample_xstates(0)


def test_sample_full_coherence():
    x = full_coherence(sample_xstates(1, seed=9)[0])
    bound_14, bound_23 = coherence_bounds(x)
    assert np.isclose(abs(x.o14), bound_14) and np.isclose(abs(x.o23), bound_23)
    assert validate(x).passed
