"""
Closed-form entanglement swapping of two X-states

The pairs (A, C1) and (B, C2) start in X-states x and xp. A Bell measurement
on C1, C2 leaves A, B in one of four X-states, built here entry by entry.
The equal-input functions (x = xp) give the outcome concurrences, the
threshold concurrences and the regime of the four outcomes.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from xswap.config import EQUIVALENCE_BOUND, PROBABILITY_FLOOR
from xswap.qcore import DEFAULT_TOLERANCE, IDENTITY_2, SIGMA_X, SIGMA_Z, BellLabel, kron
from xswap.utils import InvalidStateError, UndefinedOutcomeError, logger
from xswap.xstate import (
    EntanglementRegime,
    XState,
    bell_xstate,
    coherence_bounds,
    concurrence_x,
    entanglement_regime,
    require_valid,
    to_matrix,
)


class OutcomeRegime(Enum):
    ALL_SEPARABLE = "AllSeparable"
    TWO_ENTANGLED = "TwoEntangled"
    FOUR_ENTANGLED = "FourEntangled"


@dataclass(frozen=True)
class SwapOutcome:
    """ One Bell outcome: state and concurrence are None / nan when probability is zero """

    label: BellLabel
    probability: float
    state: XState = None
    concurrence: float = float("nan")

    @property
    def defined(self):
        return self.state is not None


@dataclass(frozen=True)
class SwapOutcomeSet:
    """ The four outcomes, in the order phi+, phi-, psi+, psi- """

    outcomes: tuple

    def __post_init__(self):
        labels = [o.label for o in self.outcomes]
        if labels != list(BellLabel):
            raise ValueError("Expected one outcome per Bell label in order, got %s" % labels)

    def __getitem__(self, label):
        return self.outcomes[list(BellLabel).index(BellLabel(label))]

    def __iter__(self):
        return iter(self.outcomes)

    @property
    def probabilities(self):
        return [o.probability for o in self.outcomes]

    @property
    def concurrences(self):
        return [o.concurrence for o in self.outcomes]


@dataclass(frozen=True)
class ThresholdReport:
    """
    Threshold concurrences of an input state used on both sides
    regime comes from the outcome inequalities, threshold_regime from comparing c_in with the thresholds
    """

    c_in: float
    c_th_min: float
    c_th_max: float
    regime: OutcomeRegime
    threshold_regime: OutcomeRegime
    radicand_clamped_min: bool
    radicand_clamped_max: bool
    four_outcome_condition: bool
    psi_only_condition: bool


@dataclass(frozen=True)
class EquivalenceReport:
    phi_pair: bool
    psi_pair: bool
    phi_psi_via_b: bool
    phi_psi_via_a: bool
    max_deviation: float


def outcome_probabilities(x, xp):
    """ (P_phi, P_psi), probability of each phi outcome and of each psi outcome """
    n_phi = (x.d11 + x.d33) * (xp.d11 + xp.d33) + (x.d22 + x.d44) * (xp.d22 + xp.d44)
    n_psi = (x.d11 + x.d33) * (xp.d22 + xp.d44) + (x.d22 + x.d44) * (xp.d11 + xp.d33)
    return n_phi / 2, n_psi / 2


def equal_input_probabilities(x):
    return outcome_probabilities(x, x)


def _outcome(label, norm, diagonal, o14, o23, tol):
    probability = norm / 2
    if norm < PROBABILITY_FLOOR:
        logger.warning("Outcome %s has zero probability, no conditional state", label.value)
        return SwapOutcome(label, 0.0)
    state = XState(*(d / norm for d in diagonal), o14=o14 / norm, o23=o23 / norm)
    return SwapOutcome(label, probability, state, concurrence_x(state, tol))


def swap_outcomes(x, xp, tol=DEFAULT_TOLERANCE):
    """
    Return the SwapOutcomeSet of a Bell measurement on C1, C2
    x is the state of (A, C1), xp the state of (B, C2); the minus outcomes
    differ from the plus ones by the sign of both coherences
    """
    require_valid(x, tol)
    require_valid(xp, tol)
    p_phi, p_psi = outcome_probabilities(x, xp)
    n_phi, n_psi = 2 * p_phi, 2 * p_psi
    phi_diagonal = (
        x.d11 * xp.d11 + x.d22 * xp.d22,
        x.d11 * xp.d33 + x.d22 * xp.d44,
        x.d33 * xp.d11 + x.d44 * xp.d22,
        x.d33 * xp.d33 + x.d44 * xp.d44,
    )
    phi_14 = x.o14 * xp.o14 + x.o23 * xp.o23
    phi_23 = x.o14 * np.conj(xp.o23) + x.o23 * np.conj(xp.o14)
    psi_diagonal = (
        x.d11 * xp.d22 + x.d22 * xp.d11,
        x.d11 * xp.d44 + x.d22 * xp.d33,
        x.d33 * xp.d22 + x.d44 * xp.d11,
        x.d33 * xp.d44 + x.d44 * xp.d33,
    )
    psi_14 = x.o14 * xp.o23 + x.o23 * xp.o14
    psi_23 = x.o14 * np.conj(xp.o14) + x.o23 * np.conj(xp.o23)
    logger.debug("Swap normalizations N_phi=%.6g N_psi=%.6g", n_phi, n_psi)
    return SwapOutcomeSet(
        (
            _outcome(BellLabel.PHI_PLUS, n_phi, phi_diagonal, phi_14, phi_23, tol),
            _outcome(BellLabel.PHI_MINUS, n_phi, phi_diagonal, -phi_14, -phi_23, tol),
            _outcome(BellLabel.PSI_PLUS, n_psi, psi_diagonal, psi_14, psi_23, tol),
            _outcome(BellLabel.PSI_MINUS, n_psi, psi_diagonal, -psi_14, -psi_23, tol),
        )
    )


def _g(x, delta):
    """ sqrt((|o14|^2 + |o23|^2)^2 - 4 |o14|^2 |o23|^2 sin^2(delta)) """
    r14, r23 = abs(x.o14) ** 2, abs(x.o23) ** 2
    return np.sqrt(max((r14 + r23) ** 2 - 4 * r14 * r23 * np.sin(delta) ** 2, 0.0))


def _inequality_terms(x):
    """ (|o14|^2 + |o23|^2, d11*d33 + d22*d44, 2*sqrt(d11*d22*d33*d44)) """
    bound_14, bound_23 = coherence_bounds(x)
    coherence = abs(x.o14) ** 2 + abs(x.o23) ** 2
    cross = x.d11 * x.d33 + x.d22 * x.d44
    geometric = 2 * bound_14 * bound_23
    return coherence, cross, geometric


def concurrence_phi(x, delta, tol=DEFAULT_TOLERANCE):
    """ Concurrence of the phi outcomes for equal inputs with phase difference delta """
    require_valid(x, tol)
    _, cross, _ = _inequality_terms(x)
    denominator = (x.d11 + x.d33) ** 2 + (x.d22 + x.d44) ** 2
    return min(2 * max(0.0, _g(x, delta) - cross) / denominator, 1.0)


def concurrence_psi(x, tol=DEFAULT_TOLERANCE):
    """ Concurrence of the psi outcomes for equal inputs, independent of the phases """
    require_valid(x, tol)
    _, _, geometric = _inequality_terms(x)
    denominator = (x.d11 + x.d33) * (x.d22 + x.d44)
    if denominator < PROBABILITY_FLOOR:
        return float("nan")
    return min(max(0.0, _g(x, 0.0) - geometric) / denominator, 1.0)


def concurrences_aligned(x, tol=DEFAULT_TOLERANCE):
    """ (C_phi, C_psi) for equal inputs once theta_14 = theta_23 """
    return concurrence_phi(x, 0.0, tol), concurrence_psi(x, tol)


def outcome_entanglement_conditions(x, tol=DEFAULT_TOLERANCE):
    """
    Regime of the four outcomes for aligned equal inputs
    FourEntangled iff |o14|^2 + |o23|^2 > d11*d33 + d22*d44
    TwoEntangled (psi outcomes only) iff d11*d33 + d22*d44 >= |o14|^2 + |o23|^2 > 2*sqrt(d11*d22*d33*d44)
    """
    require_valid(x, tol)
    coherence, cross, geometric = _inequality_terms(x)
    if coherence > cross:
        return OutcomeRegime.FOUR_ENTANGLED
    if coherence > geometric:
        return OutcomeRegime.TWO_ENTANGLED
    return OutcomeRegime.ALL_SEPARABLE


def thresholds(x, tol=DEFAULT_TOLERANCE):
    """
    Return the ThresholdReport of x used on both sides of the swap
    Negative radicands are clamped to 0 and flagged; a separable input is AllSeparable
    """
    c_in = concurrence_x(x, tol)
    coherence, cross, geometric = _inequality_terms(x)
    smallest_coherence = min(abs(x.o14) ** 2, abs(x.o23) ** 2)
    smallest_bound = min(coherence_bounds(x))
    radicand_min = geometric - smallest_coherence
    radicand_max = cross - smallest_coherence
    clamped_min, clamped_max = radicand_min < 0, radicand_max < 0
    if clamped_min or clamped_max:
        logger.warning(
            "Threshold radicands clamped to 0 (min: %s, max: %s)", clamped_min, clamped_max
        )
    c_th_min = 2 * (np.sqrt(max(radicand_min, 0.0)) - smallest_bound)
    c_th_max = 2 * (np.sqrt(max(radicand_max, 0.0)) - smallest_bound)
    if entanglement_regime(x, tol) is EntanglementRegime.SEPARABLE:
        regime = threshold_regime = OutcomeRegime.ALL_SEPARABLE
    else:
        regime = outcome_entanglement_conditions(x, tol)
        if c_in > c_th_max:
            threshold_regime = OutcomeRegime.FOUR_ENTANGLED
        elif c_in > c_th_min:
            threshold_regime = OutcomeRegime.TWO_ENTANGLED
        else:
            threshold_regime = OutcomeRegime.ALL_SEPARABLE
    return ThresholdReport(
        c_in=c_in,
        c_th_min=float(c_th_min),
        c_th_max=float(c_th_max),
        regime=regime,
        threshold_regime=threshold_regime,
        radicand_clamped_min=bool(clamped_min),
        radicand_clamped_max=bool(clamped_max),
        four_outcome_condition=bool(coherence > cross),
        psi_only_condition=bool(cross >= coherence > geometric),
    )


def max_outcome_concurrences(d11, d22, d33, d44, tol=DEFAULT_TOLERANCE):
    """
    Outcome concurrences at full coherence for fixed populations: (C_psi_max, C_phi_max)
    C_psi_max is the larger of the two, C_phi_max the smaller
    """
    diagonal = (d11, d22, d33, d44)
    if min(diagonal) < -tol.atol or abs(sum(diagonal) - 1) > tol.atol:
        raise InvalidStateError("Populations must be >= 0 and sum to 1, got %s" % (diagonal,))
    x = XState(*diagonal)
    bound_14, bound_23 = coherence_bounds(x)
    psi_denominator = (d11 + d33) * (d22 + d44)
    if psi_denominator < PROBABILITY_FLOOR:
        c_psi_max = float("nan")
    else:
        c_psi_max = (bound_14 - bound_23) ** 2 / psi_denominator
    phi_denominator = (d11 + d33) ** 2 + (d22 + d44) ** 2
    c_phi_max = max(0.0, 2 * (d11 - d22) * (d44 - d33) / phi_denominator)
    return c_psi_max, c_phi_max


def _conjugate(m, u):
    return u @ m @ u.conj().T


def local_unitary_equivalence_check(outcome_set, tol=DEFAULT_TOLERANCE):
    """
    Check the local unitary relations between the four outcome states
    phi- = (I x sz) phi+ (I x sz) and psi- = (I x sz) psi+ (I x sz) always hold;
    phi/psi related by I x sx (phi_psi_via_b) or sx x I (phi_psi_via_a) only in special cases
    """
    if not all(o.defined for o in outcome_set):
        raise UndefinedOutcomeError("Every outcome must have a conditional state")
    m = {o.label: to_matrix(o.state, tol) for o in outcome_set}
    z_b = kron(IDENTITY_2, SIGMA_Z)
    x_b = kron(IDENTITY_2, SIGMA_X)
    x_a = kron(SIGMA_X, IDENTITY_2)

    def deviation(a, b):
        return float(np.max(np.abs(a - b)))

    phi_dev = deviation(m[BellLabel.PHI_MINUS], _conjugate(m[BellLabel.PHI_PLUS], z_b))
    psi_dev = deviation(m[BellLabel.PSI_MINUS], _conjugate(m[BellLabel.PSI_PLUS], z_b))
    via_b = max(
        deviation(m[BellLabel.PSI_PLUS], _conjugate(m[BellLabel.PHI_PLUS], x_b)),
        deviation(m[BellLabel.PSI_MINUS], _conjugate(m[BellLabel.PHI_MINUS], x_b)),
    )
    via_a = max(
        deviation(m[BellLabel.PSI_PLUS], _conjugate(m[BellLabel.PHI_PLUS], x_a)),
        deviation(m[BellLabel.PSI_MINUS], _conjugate(m[BellLabel.PHI_MINUS], x_a)),
    )
    return EquivalenceReport(
        phi_pair=phi_dev <= EQUIVALENCE_BOUND,
        psi_pair=psi_dev <= EQUIVALENCE_BOUND,
        phi_psi_via_b=via_b <= EQUIVALENCE_BOUND,
        phi_psi_via_a=via_a <= EQUIVALENCE_BOUND,
        max_deviation=max(phi_dev, psi_dev),
    )


def transfer_check(x, tol=DEFAULT_TOLERANCE):
    """
    Swap x with a phi+ partner: the remote pair receives x itself
    Return (phi_plus_equals_x, equivalence report of the outcomes)
    """
    outcome_set = swap_outcomes(x, bell_xstate(BellLabel.PHI_PLUS), tol)
    received = outcome_set[BellLabel.PHI_PLUS].state
    deviation = float(np.max(np.abs(to_matrix(received, tol) - to_matrix(x, tol))))
    return deviation <= EQUIVALENCE_BOUND, local_unitary_equivalence_check(outcome_set, tol)
