"""
Brute force reference path: explicit 16 dimensional joint state, Bell
projection of C1, C2, partial trace and the general two-qubit concurrence

Only qcore and the X-state matrix conversions are shared with the closed
forms, never the swap module.
"""
from dataclasses import dataclass

import numpy as np

from xswap.config import EIGEN_FLOOR, PROBABILITY_FLOOR
from xswap.qcore import (
    DEFAULT_TOLERANCE,
    SIGMA_Y,
    BellLabel,
    bell_vector,
    hermitian_eigh,
    kron,
    partial_trace,
    permute_subsystems,
    projector,
    validate_density,
)
from xswap.utils import InvalidDensityError, logger
from xswap.xstate import to_matrix

QUBITS_4 = [2, 2, 2, 2]
# (A, C1, B, C2) -> (A, B, C1, C2), a swap of the two middle factors, its own inverse
CANONICAL_ORDER = [0, 2, 1, 3]
SPIN_FLIP = kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class JointState:
    """ 16x16 density matrix of the subsystems in order (A, B, C1, C2) """

    matrix: np.ndarray


@dataclass(frozen=True)
class BellMeasurement:
    label: BellLabel
    probability: float
    rho_ab: np.ndarray = None


def _require_density(rho, tol):
    diagnostics = validate_density(rho, tol)
    if not diagnostics.passed:
        raise InvalidDensityError(
            "Not a density matrix: hermiticity defect %.3e, trace defect %.3e, min eigenvalue %.3e"
            % (diagnostics.hermiticity_defect, diagnostics.trace_defect, diagnostics.min_eigenvalue)
        )
    return rho


def joint_state(x, xp, tol=DEFAULT_TOLERANCE):
    """ rho_(A,C1) x rho_(B,C2), reordered to (A, B, C1, C2) """
    logger.debug("Building joint state")
    product = kron(to_matrix(x, tol), to_matrix(xp, tol))
    return JointState(permute_subsystems(product, QUBITS_4, CANONICAL_ORDER))


def bell_projectors():
    """ Projectors onto the Bell states of C1, C2, keyed by label """
    return {label: projector(bell_vector(label)) for label in BellLabel}


def measure_bell(j, tol=DEFAULT_TOLERANCE):
    """
    Project C1, C2 onto each Bell state
    Return a BellMeasurement per label, rho_ab is None for zero-probability outcomes
    """
    _require_density(j.matrix, tol)
    results = []
    for label, pi in bell_projectors().items():
        p_full = kron(np.eye(4), pi)
        projected = p_full @ j.matrix @ p_full
        probability = float(np.trace(projected).real)
        if probability < PROBABILITY_FLOOR:
            results.append(BellMeasurement(label, 0.0))
            continue
        rho_ab = partial_trace(projected, QUBITS_4, keep=[0, 1]) / probability
        results.append(BellMeasurement(label, probability, rho_ab))
    return results


def _psd_sqrt(rho, tol):
    eigenvalues, eigenvectors = hermitian_eigh(rho, tol)
    eigenvalues = np.where(eigenvalues < EIGEN_FLOOR, 0.0, eigenvalues)
    return (eigenvectors * np.sqrt(eigenvalues)) @ eigenvectors.conj().T


def concurrence_general(rho, tol=DEFAULT_TOLERANCE):
    """
    Wootters concurrence of any two-qubit density matrix
    The eigenvalues of rho * rho_tilde are taken from the Hermitian matrix
    sqrt(rho) rho_tilde sqrt(rho), which has the same spectrum
    """
    rho = _require_density(np.asarray(rho, dtype=complex), tol)
    if rho.shape != (4, 4):
        raise InvalidDensityError("Expected a 4x4 density matrix, got shape %s" % (rho.shape,))
    rho_tilde = SPIN_FLIP @ rho.conj() @ SPIN_FLIP
    root = _psd_sqrt(rho, tol)
    r = root @ rho_tilde @ root
    eigenvalues = np.linalg.eigvalsh((r + r.conj().T) / 2)
    eigenvalues = np.where(eigenvalues < EIGEN_FLOOR, 0.0, eigenvalues)
    lambdas = np.sort(np.sqrt(eigenvalues))[::-1]
    return float(max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]))
