import logging

import numpy as np
import pytest

from xswap.oracle import bell_projectors, concurrence_general, joint_state, measure_bell
from xswap.qcore import BellLabel, IDENTITY_2, kron, partial_trace
from xswap.sample import make_rng, sample_xstate
from xswap.utils import InvalidDensityError, logger
from xswap.xstate import XState, bell_xstate, concurrence_x, from_matrix, maximally_mixed, to_matrix

logger.setLevel(logging.CRITICAL)


def test_oracle_joint_state_marginals():
    x = XState(0.4, 0.1, 0.2, 0.3, o14=0.1j, o23=0.05)
    xp = XState(0.1, 0.2, 0.3, 0.4, o14=0.15, o23=-0.1)
    j = joint_state(x, xp).matrix
    assert j.shape == (16, 16)
    assert np.isclose(np.trace(j), 1.0)
    # subsystems are (A, B, C1, C2)
    assert np.allclose(partial_trace(j, [2, 2, 2, 2], keep=[0, 2]), to_matrix(x))
    assert np.allclose(partial_trace(j, [2, 2, 2, 2], keep=[1, 3]), to_matrix(xp))


def test_oracle_bell_projectors():
    projectors = bell_projectors()
    assert list(projectors) == list(BellLabel)
    assert np.allclose(sum(projectors.values()), np.eye(4))


def test_oracle_measure_bell_phi_plus_inputs():
    phi = bell_xstate(BellLabel.PHI_PLUS)
    for measurement in measure_bell(joint_state(phi, phi)):
        assert np.isclose(measurement.probability, 0.25)
        assert np.allclose(measurement.rho_ab, to_matrix(bell_xstate(measurement.label)))


def test_oracle_measure_bell_zero_probability():
    j = joint_state(XState(1.0, 0.0, 0.0, 0.0), XState(0.0, 0.0, 0.0, 1.0))
    measured = {m.label: m for m in measure_bell(j)}
    assert measured[BellLabel.PHI_PLUS].rho_ab is None
    assert measured[BellLabel.PHI_PLUS].probability == 0.0
    assert np.isclose(measured[BellLabel.PSI_MINUS].probability, 0.5)


def test_oracle_concurrence_known_states():
    for label in BellLabel:
        assert np.isclose(concurrence_general(to_matrix(bell_xstate(label))), 1.0)
    assert concurrence_general(np.eye(4) / 4) == 0.0
    assert concurrence_general(kron(np.diag([1, 0]), IDENTITY_2 / 2)) == 0.0
    # a|00> + b|11> has concurrence 2ab
    a, b = 0.6, 0.8
    v = np.array([a, 0, 0, b])
    assert np.isclose(concurrence_general(np.outer(v, v)), 2 * a * b)


def test_oracle_concurrence_matches_x_closed_form():
    rng = make_rng(21)
    for _ in range(1000):
        x = sample_xstate(rng)
        assert np.isclose(concurrence_general(to_matrix(x)), concurrence_x(x), atol=1e-9)


def test_oracle_concurrence_rejects_non_density():
    with pytest.raises(InvalidDensityError):
        concurrence_general(np.diag([0.5, 0.5, 0.5, -0.5]))
    with pytest.raises(InvalidDensityError):
        concurrence_general(np.eye(2) / 2)


def test_oracle_measure_bell_mixed():
    measured = measure_bell(joint_state(maximally_mixed(), maximally_mixed()))
    for m in measured:
        assert np.isclose(m.probability, 0.25)
        assert np.allclose(m.rho_ab, np.eye(4) / 4)


def random_unitary(rng):
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def test_oracle_separable_inputs_give_separable_outcomes():
    rng = make_rng(21)
    for _ in range(1000):
        x, xp = sample_xstate(rng, "separable"), sample_xstate(rng, "separable")
        for m in measure_bell(joint_state(x, xp)):
            if m.rho_ab is not None:
                assert concurrence_general(m.rho_ab) <= 1e-9


def test_oracle_outcomes_average_to_marginals():
    rng = make_rng(22)
    for _ in range(1000):
        x, xp = sample_xstate(rng), sample_xstate(rng)
        j = joint_state(x, xp).matrix
        average = sum(m.probability * m.rho_ab for m in measure_bell(joint_state(x, xp)) if m.rho_ab is not None)
        assert np.allclose(average, partial_trace(j, [2, 2, 2, 2], keep=[0, 1]), atol=1e-12)


def test_oracle_concurrence_local_unitary_invariant():
    rng = make_rng(23)
    for _ in range(1000):
        x = sample_xstate(rng)
        u = kron(random_unitary(rng), random_unitary(rng))
        rotated = u @ to_matrix(x) @ u.conj().T
        assert abs(concurrence_general(rotated) - concurrence_x(x)) <= 1e-9


def test_oracle_outcomes_are_xstates():
    rng = make_rng(24)
    for _ in range(1000):
        for m in measure_bell(joint_state(sample_xstate(rng), sample_xstate(rng))):
            if m.rho_ab is None:
                continue
            x = from_matrix(m.rho_ab)
            assert np.allclose(to_matrix(x), m.rho_ab, atol=1e-12)
