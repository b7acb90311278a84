"""
Closed-form parameter families: the pure-state baseline and the Werner,
alpha and beta X-states, with their input, outcome and threshold quantities
"""
from dataclasses import dataclass

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from xswap.config import ATOL, DEFAULT_POINTS, FAMILIES, N_JOBS, ONSET_TOL, SWEEP_COLUMNS
from xswap.qcore import BellLabel, SIGMA_X, IDENTITY_2, bell_vector, kron, projector
from xswap.swap import OutcomeRegime, outcome_entanglement_conditions, thresholds
from xswap.utils import logger
from xswap.xstate import XState


@dataclass(frozen=True)
class PureSwapPoint:
    """
    Swap of two copies of a|00> + b|11>, a and b real nonnegative
    Entanglement values e_* are entanglement of formation (bits), c_* are concurrences
    """

    a: float
    b: float
    p_phi: float
    p_psi: float
    c_in: float
    c_phi_out: float
    e_in: float
    e_phi_out: float
    e_psi_out: float
    e_avg: float


@dataclass(frozen=True)
class FamilyPoint:
    family: str
    param: float
    input: XState
    c_in: float
    c_out_phi: float
    c_out_psi: float
    c_th_min: float
    c_th_max: float
    regime: OutcomeRegime


def _check_unit_interval(name, value):
    if not 0 <= value <= 1:
        raise ValueError("%s must be in [0, 1], got %r" % (name, value))


def binary_entropy(p):
    """ Binary entropy in bits, h(0) = h(1) = 0 """
    if p <= 0 or p >= 1:
        return 0.0
    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def eof_from_concurrence(c, atol=ATOL):
    """ Entanglement of formation h((1 + sqrt(1 - c^2)) / 2) of a two-qubit state of concurrence c """
    if not -atol <= c <= 1 + atol:
        raise ValueError("Concurrence must be in [0, 1], got %r" % c)
    c = min(max(c, 0.0), 1.0)
    return binary_entropy((1 + np.sqrt(1 - c ** 2)) / 2)


def pure_outcome_concurrence(a_mod):
    """ Concurrence of the phi outcome (a^2|00> +- b^2|11>) / sqrt(a^4 + b^4) """
    _check_unit_interval("a_mod", a_mod)
    a2 = a_mod ** 2
    b2 = 1 - a2
    return 2 * a2 * b2 / (a2 ** 2 + b2 ** 2)


def pure_swap(a_mod):
    """
    Swap two copies of a|00> + b|11>: the psi outcomes are Bell states with
    probability a^2 b^2 each, the phi outcomes keep less entanglement
    """
    _check_unit_interval("a_mod", a_mod)
    a2 = a_mod ** 2
    b2 = 1 - a2
    b = np.sqrt(b2)
    p_phi = (a2 ** 2 + b2 ** 2) / 2
    p_psi = a2 * b2
    c_in = 2 * a_mod * b
    c_phi_out = pure_outcome_concurrence(a_mod)
    e_phi_out = eof_from_concurrence(c_phi_out)
    e_psi_out = 1.0 if p_psi > 0 else 0.0
    return PureSwapPoint(
        a=float(a_mod),
        b=float(b),
        p_phi=float(p_phi),
        p_psi=float(p_psi),
        c_in=float(c_in),
        c_phi_out=float(c_phi_out),
        e_in=eof_from_concurrence(c_in),
        e_phi_out=e_phi_out,
        e_psi_out=e_psi_out,
        e_avg=float(2 * p_phi * e_phi_out + 2 * p_psi * e_psi_out),
    )


def pure_xstate(a_mod):
    """ a|00> + b|11> as an X-state """
    _check_unit_interval("a_mod", a_mod)
    a2 = a_mod ** 2
    return XState(a2, 0.0, 0.0, 1 - a2, o14=a_mod * np.sqrt(1 - a2))


def werner_xstate(gamma):
    """ (1 - gamma) I/4 + gamma |psi+><psi+| """
    _check_unit_interval("gamma", gamma)
    return XState((1 - gamma) / 4, (1 + gamma) / 4, (1 + gamma) / 4, (1 - gamma) / 4, o23=gamma / 2)


def alpha_xstate(alpha):
    """ (1 - alpha)/2 (|psi+><psi+| + |psi-><psi-|) + alpha |phi+><phi+| """
    _check_unit_interval("alpha", alpha)
    return XState(alpha / 2, (1 - alpha) / 2, (1 - alpha) / 2, alpha / 2, o14=alpha / 2)


def beta_xstate(beta):
    """ beta |phi+><phi+| + (1 - beta) |psi+><psi+| """
    _check_unit_interval("beta", beta)
    return XState(beta / 2, (1 - beta) / 2, (1 - beta) / 2, beta / 2, o14=beta / 2, o23=(1 - beta) / 2)


def _family_point(family, param, x, c_in, c_out_phi, c_out_psi):
    report = thresholds(x)
    return FamilyPoint(
        family=family,
        param=float(param),
        input=x,
        c_in=float(c_in),
        c_out_phi=float(c_out_phi),
        c_out_psi=float(c_out_psi),
        c_th_min=report.c_th_min,
        c_th_max=report.c_th_max,
        regime=report.regime,
    )


def werner(gamma):
    """ Werner point: outcomes entangled (all four) exactly for gamma > 1/sqrt(3) """
    x = werner_xstate(gamma)
    c_out = max(0.0, (3 * gamma ** 2 - 1) / 2)
    return _family_point("werner", gamma, x, max(0.0, (3 * gamma - 1) / 2), c_out, c_out)


def werner_threshold(gamma):
    """ Common threshold sqrt((1 - gamma^2) / 2) - (1 - gamma) / 2 """
    return float(np.sqrt((1 - gamma ** 2) / 2) - (1 - gamma) / 2)


def alpha_state(alpha):
    """ alpha point: the four outcomes share the concurrence max(0, alpha (3 alpha - 2)) """
    x = alpha_xstate(alpha)
    c_out = max(0.0, alpha * (3 * alpha - 2))
    return _family_point("alpha", alpha, x, max(0.0, 2 * alpha - 1), c_out, c_out)


def alpha_threshold(alpha):
    """ Common threshold sqrt(2 alpha (1 - alpha)) - (1 - alpha), defined for alpha > 1/2 """
    if alpha <= 0.5:
        return float("nan")
    return float(np.sqrt(2 * alpha * (1 - alpha)) - (1 - alpha))


def beta_state(beta):
    """ beta point: outcomes are beta-states again and c_out = c_in^2 """
    x = beta_xstate(beta)
    c_in = abs(1 - 2 * beta)
    return _family_point("beta", beta, x, c_in, c_in ** 2, c_in ** 2)


def beta_threshold(beta):
    """ Common threshold, piecewise around the separable point beta = 1/2 """
    if beta < 0.5:
        return float(np.sqrt(beta * (2 - 3 * beta)) - beta)
    if beta > 0.5:
        return float(np.sqrt((3 * beta - 1) * (1 - beta)) - (1 - beta))
    return float("nan")


def beta_iterate(beta, rounds=1):
    """ beta parameter after repeated equal-input swaps, beta -> beta^2 + (1 - beta)^2 """
    _check_unit_interval("beta", beta)
    for _ in range(rounds):
        beta = beta ** 2 + (1 - beta) ** 2
    return beta


def _bell_projector(label):
    return projector(bell_vector(label))


def alpha_outcome_matrices(alpha):
    """ The four outcome states of two alpha-states as Bell-diagonal mixtures, keyed by label """
    _check_unit_interval("alpha", alpha)
    mixed = alpha * (1 - alpha) * (
        _bell_projector(BellLabel.PSI_PLUS) + _bell_projector(BellLabel.PSI_MINUS)
    )
    common = (alpha ** 2 + (1 - alpha) ** 2) / 2
    phi_plus = (
        mixed
        + (common + alpha ** 2 / 2) * _bell_projector(BellLabel.PHI_PLUS)
        + (common - alpha ** 2 / 2) * _bell_projector(BellLabel.PHI_MINUS)
    )
    phi_minus = (
        mixed
        + (common - alpha ** 2 / 2) * _bell_projector(BellLabel.PHI_PLUS)
        + (common + alpha ** 2 / 2) * _bell_projector(BellLabel.PHI_MINUS)
    )
    flip_a = kron(SIGMA_X, IDENTITY_2)
    return {
        BellLabel.PHI_PLUS: phi_plus,
        BellLabel.PHI_MINUS: phi_minus,
        BellLabel.PSI_PLUS: flip_a @ phi_plus @ flip_a,
        BellLabel.PSI_MINUS: flip_a @ phi_minus @ flip_a,
    }


def beta_outcome_matrices(beta):
    """ The four outcome states of two beta-states, keyed by label """
    _check_unit_interval("beta", beta)
    beta_out = beta_iterate(beta)
    phi_plus = beta_out * _bell_projector(BellLabel.PHI_PLUS) + (1 - beta_out) * _bell_projector(
        BellLabel.PSI_PLUS
    )
    phi_minus = beta_out * _bell_projector(BellLabel.PHI_MINUS) + (1 - beta_out) * _bell_projector(
        BellLabel.PSI_MINUS
    )
    flip_a = kron(SIGMA_X, IDENTITY_2)
    return {
        BellLabel.PHI_PLUS: phi_plus,
        BellLabel.PHI_MINUS: phi_minus,
        BellLabel.PSI_PLUS: flip_a @ phi_plus @ flip_a,
        BellLabel.PSI_MINUS: flip_a @ phi_minus @ flip_a,
    }


FAMILY_FUNCTIONS = {"werner": werner, "alpha": alpha_state, "beta": beta_state}
FAMILY_XSTATES = {
    "pure": pure_xstate,
    "werner": werner_xstate,
    "alpha": alpha_xstate,
    "beta": beta_xstate,
}


def find_onset(family, lo, hi, tol=ONSET_TOL, max_iter=200):
    """
    Bisection for the parameter where the four outcomes become entangled
    Requires the family to be below the onset at lo and above it at hi
    """
    make_state = FAMILY_XSTATES[family]

    def entangled(param):
        return outcome_entanglement_conditions(make_state(param)) is OutcomeRegime.FOUR_ENTANGLED

    if entangled(lo) or not entangled(hi):
        raise ValueError("No onset bracketed by [%r, %r] for family %s" % (lo, hi, family))
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = (lo + hi) / 2
        if entangled(mid):
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def _pure_row(a):
    point = pure_swap(a)
    return [point.a, point.e_in, point.e_phi_out, point.e_psi_out, point.e_avg, point.p_phi, point.p_psi]


def _family_row(family, param):
    point = FAMILY_FUNCTIONS[family](param)
    return [
        point.param,
        point.c_in,
        point.c_out_phi,
        point.c_out_psi,
        point.c_th_min,
        point.c_th_max,
        point.regime.value,
    ]


def sweep(family, start=0.0, stop=1.0, points=DEFAULT_POINTS, n_jobs=N_JOBS):
    """
    Return a DataFrame with one row per grid point, columns as in config.SWEEP_COLUMNS
    The grid is uniform and inclusive; rows keep grid order whatever n_jobs
    """
    if family not in FAMILIES:
        raise ValueError("No such family. Please choose in '%s'." % "', '".join(FAMILIES))
    if not 0 <= start <= stop <= 1:
        raise ValueError("Expected 0 <= start <= stop <= 1, got %r, %r" % (start, stop))
    if points < 2:
        raise ValueError("points must be >= 2, got %r" % points)
    grid = np.linspace(start, stop, int(points))
    logger.info("Sweeping %s family on %d points in [%g, %g]", family, points, start, stop)
    if family == "pure":
        rows = Parallel(n_jobs=n_jobs, prefer="threads")(delayed(_pure_row)(a) for a in grid)
    else:
        rows = Parallel(n_jobs=n_jobs, prefer="threads")(
            delayed(_family_row)(family, p) for p in grid
        )
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS[family])
