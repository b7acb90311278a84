"""
OracleVerifier class to cross-check the closed forms against the brute force oracle
"""
from dataclasses import dataclass

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from xswap.config import DEFAULT_VERIFY_CASES, N_JOBS, SEED, VERIFY_BOUND
from xswap.oracle import concurrence_general, joint_state, measure_bell
from xswap.sample import make_rng, sample_xstate
from xswap.swap import concurrence_phi, concurrence_psi, swap_outcomes
from xswap.qcore import BellLabel
from xswap.utils import logger
from xswap.xstate import phase_difference, to_matrix

DEVIATION_COLUMNS = [
    "matrix_deviation",
    "probability_deviation",
    "probability_sum_defect",
    "concurrence_deviation",
    "equal_input_concurrence_deviation",
]


@dataclass(frozen=True)
class VerificationReport:
    n_cases: int
    max_deviations: dict
    bound: float

    @property
    def passed(self):
        return all(v <= self.bound for v in self.max_deviations.values())


class OracleVerifier:
    """
    Sample X-state pairs and compare the closed-form swap with the oracle
    Methods: sample_cases, compute_stats, run
    n unequal pairs are followed by n equal-input cases; outcomes_fn replaces
    swap_outcomes, e.g. to check that a wrong closed form is caught
    """

    def __init__(self, n=DEFAULT_VERIFY_CASES, seed=SEED, outcomes_fn=None, n_jobs=N_JOBS):
        if n < 1:
            raise ValueError("n must be >= 1, got %r" % n)
        self.n = n
        self.seed = seed
        self.outcomes_fn = outcomes_fn
        self.n_jobs = n_jobs

    def sample_cases(self):
        """ List of (x, xp, equal_input) tuples, deterministic for the seed """
        rng = make_rng(self.seed)
        cases = [(sample_xstate(rng), sample_xstate(rng), False) for _ in range(self.n)]
        for _ in range(self.n):
            x = sample_xstate(rng)
            cases.append((x, x, True))
        return cases

    @staticmethod
    def compare_case(x, xp, equal_input, outcomes_fn):
        """ Return the deviations of one case, in the order of DEVIATION_COLUMNS """
        closed = outcomes_fn(x, xp)
        measured = {m.label: m for m in measure_bell(joint_state(x, xp))}
        matrix_dev = probability_dev = concurrence_dev = 0.0
        oracle_concurrence = {}
        for outcome in closed:
            reference = measured[outcome.label]
            probability_dev = max(probability_dev, abs(outcome.probability - reference.probability))
            if outcome.defined != (reference.rho_ab is not None):
                matrix_dev = concurrence_dev = np.inf
                continue
            if not outcome.defined:
                continue
            oracle_concurrence[outcome.label] = concurrence_general(reference.rho_ab)
            matrix_dev = max(
                matrix_dev, float(np.max(np.abs(to_matrix(outcome.state) - reference.rho_ab)))
            )
            concurrence_dev = max(
                concurrence_dev, abs(outcome.concurrence - oracle_concurrence[outcome.label])
            )
        probability_sum_defect = abs(sum(closed.probabilities) - 1)
        equal_dev = 0.0
        if equal_input:
            phi = oracle_concurrence.get(BellLabel.PHI_PLUS)
            psi = oracle_concurrence.get(BellLabel.PSI_PLUS)
            if phi is not None:
                equal_dev = max(equal_dev, abs(concurrence_phi(x, phase_difference(x)) - phi))
            if psi is not None:
                equal_dev = max(equal_dev, abs(concurrence_psi(x) - psi))
        return [matrix_dev, probability_dev, probability_sum_defect, concurrence_dev, equal_dev]

    def compute_stats(self, cases=None):
        """ Return a DataFrame with one row of deviations per case """
        if cases is None:
            cases = self.sample_cases()
        outcomes_fn = self.outcomes_fn or swap_outcomes
        rows = Parallel(n_jobs=self.n_jobs, prefer="threads")(
            delayed(self.compare_case)(x, xp, equal_input, outcomes_fn)
            for x, xp, equal_input in cases
        )
        stats = pd.DataFrame(rows, columns=DEVIATION_COLUMNS)
        stats["equal_input"] = [equal_input for _, _, equal_input in cases]
        return stats

    def run(self):
        """ Compare all cases and return a VerificationReport of the max deviations """
        logger.info("Verifying %d pairs and %d equal-input cases, seed %d", self.n, self.n, self.seed)
        stats = self.compute_stats()
        max_deviations = {k: float(v) for k, v in stats[DEVIATION_COLUMNS].agg("max").items()}
        report = VerificationReport(len(stats.index), max_deviations, VERIFY_BOUND)
        if not report.passed:
            logger.error("Verification failed, max deviations %s", max_deviations)
        return report
