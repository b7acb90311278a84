import logging

import numpy as np
import pandas as pd
import pytest

from xswap.config import ONSET_TOL, SWEEP_COLUMNS
from xswap.families import (
    alpha_outcome_matrices,
    alpha_state,
    alpha_threshold,
    alpha_xstate,
    beta_iterate,
    beta_outcome_matrices,
    beta_state,
    beta_threshold,
    beta_xstate,
    eof_from_concurrence,
    find_onset,
    pure_outcome_concurrence,
    pure_swap,
    pure_xstate,
    sweep,
    werner,
    werner_threshold,
)
from xswap.oracle import concurrence_general, joint_state, measure_bell
from xswap.qcore import BellLabel
from xswap.swap import OutcomeRegime, swap_outcomes, thresholds
from xswap.utils import logger
from xswap.xstate import from_matrix, to_matrix

logger.setLevel(logging.CRITICAL)


def test_families_eof():
    assert eof_from_concurrence(0.0) == 0.0
    assert np.isclose(eof_from_concurrence(1.0), 1.0)
    assert np.isclose(eof_from_concurrence(0.6), 0.468996, atol=1e-6)
    values = [eof_from_concurrence(c) for c in np.linspace(0, 1, 51)]
    assert np.all(np.diff(values) > 0)
    with pytest.raises(ValueError):
        eof_from_concurrence(1.5)


def test_families_pure_swap():
    point = pure_swap(0.6)
    assert np.isclose(point.p_psi, 0.2304)
    assert np.isclose(point.p_phi, 0.2696)
    assert np.isclose(point.c_phi_out, 0.854599, atol=1e-6)
    assert np.isclose(point.c_in, 0.96)
    assert point.e_psi_out == 1.0
    assert np.isclose(2 * point.p_phi + 2 * point.p_psi, 1.0, atol=1e-12)
    assert np.isclose(point.e_avg, 2 * point.p_phi * point.e_phi_out + 2 * point.p_psi)


def test_families_pure_swap_limits():
    point = pure_swap(1 / np.sqrt(2))
    assert np.isclose(point.p_phi, 0.25) and np.isclose(point.p_psi, 0.25)
    assert np.isclose(point.e_phi_out, 1.0) and np.isclose(point.e_avg, 1.0)
    point = pure_swap(0.0)
    assert point.p_psi == 0.0 and point.p_phi == 0.5
    assert point.e_in == 0.0 and point.e_avg == 0.0
    with pytest.raises(ValueError):
        pure_swap(1.2)


def test_families_pure_swap_matches_x_swap():
    for a in [0.3, 0.6, 0.9]:
        x = pure_xstate(a)
        outcome_set = swap_outcomes(x, x)
        point = pure_swap(a)
        assert np.isclose(outcome_set[BellLabel.PHI_PLUS].probability, point.p_phi)
        assert np.isclose(outcome_set[BellLabel.PSI_MINUS].probability, point.p_psi)
        assert np.isclose(outcome_set[BellLabel.PHI_MINUS].concurrence, pure_outcome_concurrence(a))
        assert np.isclose(outcome_set[BellLabel.PSI_PLUS].concurrence, 1.0)


def test_families_werner():
    point = werner(0.8)
    assert np.isclose(point.c_in, 0.7)
    assert np.isclose(point.c_out_phi, 0.46) and np.isclose(point.c_out_psi, 0.46)
    assert np.isclose(point.c_th_min, werner_threshold(0.8))
    assert np.isclose(point.c_th_max, np.sqrt(0.18) - 0.1)
    assert point.regime is OutcomeRegime.FOUR_ENTANGLED
    assert werner(0.6).regime is OutcomeRegime.FOUR_ENTANGLED
    assert werner(0.5).regime is not OutcomeRegime.FOUR_ENTANGLED
    assert werner(1 / 3).c_in == 0.0
    assert np.isclose(werner(1.0).c_out_phi, 1.0)


def test_families_werner_against_oracle():
    point = werner(0.8)
    for m in measure_bell(joint_state(point.input, point.input)):
        assert np.isclose(concurrence_general(m.rho_ab), 0.46, atol=1e-10)


def test_families_alpha():
    point = alpha_state(0.8)
    assert np.isclose(point.c_in, 0.6)
    assert np.isclose(point.c_out_phi, 0.32) and np.isclose(point.c_out_psi, 0.32)
    assert np.isclose(point.c_th_max, alpha_threshold(0.8))
    assert np.isnan(alpha_threshold(0.5))
    assert alpha_state(0.6).c_out_phi == 0.0


def test_families_alpha_outcome_matrices():
    x = alpha_xstate(0.8)
    outcome_set = swap_outcomes(x, x)
    matrices = alpha_outcome_matrices(0.8)
    measured = {m.label: m.rho_ab for m in measure_bell(joint_state(x, x))}
    for label in BellLabel:
        assert np.allclose(matrices[label], to_matrix(outcome_set[label].state), atol=1e-10)
        assert np.allclose(matrices[label], measured[label], atol=1e-10)
        assert np.isclose(concurrence_general(matrices[label]), 0.32, atol=1e-10)


def test_families_beta():
    point = beta_state(0.9)
    assert np.isclose(point.c_in, 0.8)
    assert np.isclose(point.c_out_phi, 0.64)
    assert np.isclose(beta_iterate(0.9), 0.82)
    assert np.isclose(beta_iterate(0.9, rounds=2), 0.82 ** 2 + 0.18 ** 2)
    assert point.regime is OutcomeRegime.FOUR_ENTANGLED
    separable = beta_state(0.5)
    assert separable.c_in == 0.0 and separable.c_out_phi == 0.0
    assert separable.regime is OutcomeRegime.ALL_SEPARABLE
    assert np.isnan(beta_threshold(0.5))


def test_families_beta_thresholds():
    for beta in [0.1, 0.2, 0.4, 0.6, 0.9]:
        report = thresholds(beta_xstate(beta))
        assert np.isclose(report.c_th_min, beta_threshold(beta))
        assert np.isclose(report.c_th_max, beta_threshold(beta))
        assert report.regime is OutcomeRegime.FOUR_ENTANGLED


def test_families_beta_outcome_matrices():
    x = beta_xstate(0.9)
    outcome_set = swap_outcomes(x, x)
    matrices = beta_outcome_matrices(0.9)
    for label in BellLabel:
        assert np.allclose(matrices[label], to_matrix(outcome_set[label].state), atol=1e-10)
        assert np.isclose(outcome_set[label].concurrence, 0.64)


def test_families_out_of_range():
    for fn in [werner, alpha_state, beta_state]:
        with pytest.raises(ValueError):
            fn(-0.1)


def test_families_find_onset():
    assert np.isclose(find_onset("werner", 0.3, 0.9), 1 / np.sqrt(3), atol=1e-10)
    assert np.isclose(find_onset("alpha", 0.5, 0.9), 2 / 3, atol=1e-10)
    with pytest.raises(ValueError):
        find_onset("werner", 0.7, 0.9)


def test_families_sweep():
    df = sweep("werner")
    assert list(df.columns) == SWEEP_COLUMNS["werner"]
    assert len(df.index) == 201
    assert df["param"].iloc[0] == 0.0 and df["param"].iloc[-1] == 1.0
    above = df[df["param"] > 1 / np.sqrt(3)]
    below = df[df["param"] < 1 / np.sqrt(3)]
    assert (above["regime"] == "FourEntangled").all()
    assert not (below["regime"] == "FourEntangled").any()


def test_families_sweep_beta_midpoint():
    df = sweep("beta", points=201)
    assert df.loc[100, "param"] == 0.5
    assert df.loc[100, "regime"] == "AllSeparable"
    assert (df.drop(index=100)["regime"] == "FourEntangled").all()


def test_families_sweep_pure():
    df = sweep("pure", 0.0, 1.0, 11)
    assert list(df.columns) == SWEEP_COLUMNS["pure"]
    assert np.allclose(2 * df["p_phi"] + 2 * df["p_psi"], 1.0)
    assert (df["E_avg"] <= 1 + 1e-12).all()


def test_families_sweep_parallel_same_rows():
    pd.testing.assert_frame_equal(sweep("alpha", points=41), sweep("alpha", points=41, n_jobs=2))


def test_families_sweep_invalid():
    with pytest.raises(ValueError):
        sweep("gamma")
    with pytest.raises(ValueError):
        sweep("werner", 0.5, 0.2)
    with pytest.raises(ValueError):
        sweep("werner", points=1)


def test_families_sweep_pure_swap_does_not_gain():
    df = sweep("pure")
    assert (df["E_avg"] <= df["E_in"] + 1e-12).all()
    assert (df["p_psi"] <= df["p_phi"] + 1e-15).all()


def test_families_alpha_grid_against_oracle():
    for alpha in np.linspace(0, 1, 201):
        point = alpha_state(alpha)
        for m in measure_bell(joint_state(point.input, point.input)):
            assert abs(concurrence_general(m.rho_ab) - point.c_out_phi) <= 1e-9
        assert point.c_out_phi == point.c_out_psi


def test_families_werner_onset_from_oracle():
    for gamma in np.linspace(0, 1, 201):
        x = werner(gamma).input
        measured = measure_bell(joint_state(x, x))
        entangled = [concurrence_general(m.rho_ab) > 1e-9 for m in measured]
        assert all(entangled) == (gamma > 1 / np.sqrt(3))
        assert any(entangled) == all(entangled)


def test_families_beta_outcomes_from_oracle():
    for beta in np.linspace(0, 1, 21):
        x = beta_xstate(beta)
        matrices = beta_outcome_matrices(beta)
        measured = {m.label: m.rho_ab for m in measure_bell(joint_state(x, x))}
        recovered = from_matrix(measured[BellLabel.PHI_PLUS])
        expected = beta_xstate(beta_iterate(beta))
        assert np.allclose(to_matrix(recovered), to_matrix(expected), atol=1e-12)
        for label in BellLabel:
            assert np.allclose(to_matrix(from_matrix(measured[label])), matrices[label], atol=1e-12)


def test_families_find_onset_default_tolerance():
    onset = find_onset("werner", 0.3, 0.9)
    assert abs(onset - 1 / np.sqrt(3)) <= ONSET_TOL
    assert onset == find_onset("werner", 0.3, 0.9, tol=ONSET_TOL)
    assert abs(find_onset("werner", 0.3, 0.9, tol=1e-3) - 1 / np.sqrt(3)) <= 1e-3
