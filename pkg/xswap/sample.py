"""
Seeded random X-states

Populations are normalized independent uniforms, coherence moduli are
uniform up to their positivity bound and phases uniform on [0, 2 pi).
The generator is numpy's PCG64 (np.random.default_rng), so a seed gives
the same states on every platform.
"""
import numpy as np

from xswap.config import SAMPLE_CONSTRAINTS, SAMPLER_MAX_DRAWS, SEED
from xswap.utils import SamplerCapError, logger
from xswap.xstate import EntanglementRegime, XState, coherence_bounds, entanglement_regime


def make_rng(seed=SEED):
    return np.random.default_rng(seed)


def random_xstate(rng):
    """ Draw one X-state, always valid """
    u = rng.random(4)
    d11, d22, d33, d44 = u / u.sum()
    bound_14, bound_23 = coherence_bounds(XState(d11, d22, d33, d44))
    r14 = rng.uniform(0, bound_14)
    r23 = rng.uniform(0, bound_23)
    theta_14, theta_23 = rng.uniform(0, 2 * np.pi, size=2)
    return XState(
        d11, d22, d33, d44, o14=r14 * np.exp(1j * theta_14), o23=r23 * np.exp(1j * theta_23)
    )


def _accepts(x, constraint):
    if constraint == "any":
        return True
    separable = entanglement_regime(x) is EntanglementRegime.SEPARABLE
    return separable if constraint == "separable" else not separable


def sample_xstate(rng, constraint="any", max_draws=SAMPLER_MAX_DRAWS):
    """ Rejection sampling of one X-state satisfying constraint ('any', 'separable' or 'entangled') """
    if constraint not in SAMPLE_CONSTRAINTS:
        raise ValueError(
            "No such constraint. Please choose in '%s'." % "', '".join(SAMPLE_CONSTRAINTS)
        )
    for _ in range(max_draws):
        x = random_xstate(rng)
        if _accepts(x, constraint):
            return x
    raise SamplerCapError("No %s state found in %d draws" % (constraint, max_draws))


def sample_xstates(n, seed=SEED, constraint="any", max_draws=SAMPLER_MAX_DRAWS):
    """ List of n X-states, deterministic for a given seed """
    if n < 1:
        raise ValueError("n must be >= 1, got %r" % n)
    rng = make_rng(seed)
    logger.debug("Sampling %d %s states with seed %d", n, constraint, seed)
    return [sample_xstate(rng, constraint, max_draws) for _ in range(n)]


def full_coherence(x):
    """ Same populations and phases, coherences pushed to their positivity bound """
    bound_14, bound_23 = coherence_bounds(x)
    return XState(
        *x.diagonal,
        o14=bound_14 * np.exp(1j * np.angle(x.o14)),
        o23=bound_23 * np.exp(1j * np.angle(x.o23))
    )
