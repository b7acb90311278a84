"""
X-state data model: validity, matrix conversion, closed-form concurrence,
entanglement regime and the phase alignment unitary

In the basis 00, 01, 10, 11 an X-state only populates the diagonal and the
anti-diagonal:

    d11  0    0    o14
    0    d22  o23  0
    0    o23* d33  0
    o14* 0    0    d44
"""
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from xswap.qcore import (
    DEFAULT_TOLERANCE,
    IDENTITY_2,
    BellLabel,
    as_cmatrix,
    dagger,
    hermiticity_defect,
    kron,
)
from xswap.utils import InvalidDensityError, InvalidStateError, NonXStateError, logger

# positions outside the X pattern of a 4x4 matrix
OFF_PATTERN = [(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)]


@dataclass(frozen=True)
class XState:
    """ Seven real parameters of a two-qubit X-state: four populations, two complex coherences """

    d11: float
    d22: float
    d33: float
    d44: float
    o14: complex = 0j
    o23: complex = 0j

    def __post_init__(self):
        for name in ("d11", "d22", "d33", "d44"):
            object.__setattr__(self, name, float(getattr(self, name)))
        for name in ("o14", "o23"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        values = [self.d11, self.d22, self.d33, self.d44, self.o14, self.o23]
        if not all(np.isfinite(v) for v in values):
            raise InvalidStateError("X-state parameters must be finite, got %s" % (values,))

    @property
    def diagonal(self):
        return (self.d11, self.d22, self.d33, self.d44)


@dataclass(frozen=True)
class XStateDiagnostics:
    normalization_defect: float
    min_diagonal: float
    margin_14: float
    margin_23: float
    passed: bool


class EntanglementRegime(Enum):
    SEPARABLE = "Separable"
    ENTANGLED_VIA_00_11 = "EntangledVia00_11"
    ENTANGLED_VIA_01_10 = "EntangledVia01_10"


def _clamped(value):
    """ Populations within -atol of zero are clamped to 0 before square roots """
    return max(value, 0.0)


def coherence_bounds(x):
    """ Return (sqrt(d11*d44), sqrt(d22*d33)), the largest moduli allowed for o14 and o23 """
    return (
        np.sqrt(_clamped(x.d11) * _clamped(x.d44)),
        np.sqrt(_clamped(x.d22) * _clamped(x.d33)),
    )


def validate(x, tol=DEFAULT_TOLERANCE):
    """
    Return XStateDiagnostics of x
    Passes iff populations sum to 1 and are >= -atol and both positivity margins are >= -atol
    """
    bound_14, bound_23 = coherence_bounds(x)
    normalization_defect = abs(sum(x.diagonal) - 1)
    min_diagonal = min(x.diagonal)
    margin_14 = bound_14 - abs(x.o14)
    margin_23 = bound_23 - abs(x.o23)
    passed = (
        normalization_defect <= tol.atol
        and min_diagonal >= -tol.atol
        and margin_14 >= -tol.atol
        and margin_23 >= -tol.atol
    )
    return XStateDiagnostics(normalization_defect, min_diagonal, margin_14, margin_23, passed)


def require_valid(x, tol=DEFAULT_TOLERANCE):
    """ Raise InvalidStateError if x does not pass validate """
    diagnostics = validate(x, tol)
    if not diagnostics.passed:
        raise InvalidStateError(
            "Invalid X-state: normalization defect %.3e, min population %.3e, "
            "positivity margins %.3e (o14) and %.3e (o23)"
            % (
                diagnostics.normalization_defect,
                diagnostics.min_diagonal,
                diagnostics.margin_14,
                diagnostics.margin_23,
            )
        )
    return x


def to_matrix(x, tol=DEFAULT_TOLERANCE):
    """ 4x4 density matrix of a valid X-state """
    require_valid(x, tol)
    m = np.diag(np.array(x.diagonal, dtype=complex))
    m[0, 3], m[3, 0] = x.o14, np.conj(x.o14)
    m[1, 2], m[2, 1] = x.o23, np.conj(x.o23)
    return m


def x_defect(m):
    """ Largest modulus among the entries outside the X pattern """
    m = as_cmatrix(m)
    return float(max(abs(m[i, j]) for i, j in OFF_PATTERN))


def from_matrix(m, tol=DEFAULT_TOLERANCE):
    """
    Extract the X-state of a 4x4 density matrix
    Raise NonXStateError if an off-pattern entry exceeds atol, InvalidDensityError
    if the matrix is not Hermitian with unit trace or the extracted state is not positive
    """
    m = as_cmatrix(m)
    if m.shape != (4, 4):
        raise InvalidDensityError("Expected a 4x4 matrix, got shape %s" % (m.shape,))
    defect = x_defect(m)
    if defect > tol.atol:
        raise NonXStateError("Matrix is not an X-state, X-defect %.3e" % defect, defect)
    h_defect = hermiticity_defect(m)
    if h_defect > tol.atol:
        raise InvalidDensityError("Matrix is not Hermitian, defect %.3e" % h_defect)
    x = XState(
        d11=m[0, 0].real,
        d22=m[1, 1].real,
        d33=m[2, 2].real,
        d44=m[3, 3].real,
        o14=m[0, 3],
        o23=m[1, 2],
    )
    if not validate(x, tol).passed:
        raise InvalidDensityError("Matrix is not a valid density matrix")
    return x


def concurrence_x(x, tol=DEFAULT_TOLERANCE):
    """ Closed-form concurrence 2*max(0, |o14| - sqrt(d22*d33), |o23| - sqrt(d11*d44)) """
    require_valid(x, tol)
    bound_14, bound_23 = coherence_bounds(x)
    value = 2 * max(0.0, abs(x.o14) - bound_23, abs(x.o23) - bound_14)
    return min(value, 1.0)


def entanglement_regime(x, tol=DEFAULT_TOLERANCE):
    """
    Which coherence carries the entanglement, if any
    Strict inequalities: boundary states are Separable, consistent with concurrence_x = 0
    """
    require_valid(x, tol)
    bound_14, bound_23 = coherence_bounds(x)
    if abs(x.o14) > bound_23:
        return EntanglementRegime.ENTANGLED_VIA_00_11
    if abs(x.o23) > bound_14:
        return EntanglementRegime.ENTANGLED_VIA_01_10
    return EntanglementRegime.SEPARABLE


def phases(x):
    """ (theta_14, theta_23), phases of the coherences in radians """
    return float(np.angle(x.o14)), float(np.angle(x.o23))


def phase_difference(x):
    """ Delta = theta_14 - theta_23 """
    theta_14, theta_23 = phases(x)
    return theta_14 - theta_23


def phase_alignment_unitary(x):
    """
    Single qubit unitary diag(1, exp(i*Delta/2))
    Applied to the second qubit of the pair it makes theta_14 = theta_23.
    Identity when either coherence vanishes.
    """
    if x.o14 == 0 or x.o23 == 0:
        return IDENTITY_2.copy()
    return np.diag([1, np.exp(1j * phase_difference(x) / 2)]).astype(complex)


def apply_local_unitary(x, u_a=None, u_b=None, tol=DEFAULT_TOLERANCE):
    """ Return the X-state (u_a x u_b) rho (u_a x u_b)^dagger, identity where a unitary is None """
    u = kron(IDENTITY_2 if u_a is None else u_a, IDENTITY_2 if u_b is None else u_b)
    return from_matrix(u @ to_matrix(x, tol) @ dagger(u), tol)


def align_phases(x, tol=DEFAULT_TOLERANCE):
    """ Apply the phase alignment unitary to the second qubit, giving Delta = 0 """
    u = phase_alignment_unitary(x)
    # the unitary is diagonal, so only the coherences pick up phases
    w = u[1, 1]
    aligned = replace(x, o14=x.o14 * np.conj(w), o23=x.o23 * w)
    logger.debug("Aligned phases, Delta %.6f -> %.6f", phase_difference(x), phase_difference(aligned))
    return require_valid(aligned, tol)


def bell_xstate(label):
    """ Bell state as an X-state, with exact entries 1/2 """
    label = BellLabel(label)
    sign = -0.5 if label in (BellLabel.PHI_MINUS, BellLabel.PSI_MINUS) else 0.5
    if label in (BellLabel.PHI_PLUS, BellLabel.PHI_MINUS):
        return XState(0.5, 0.0, 0.0, 0.5, o14=sign)
    return XState(0.0, 0.5, 0.5, 0.0, o23=sign)


def maximally_mixed():
    return XState(0.25, 0.25, 0.25, 0.25)
