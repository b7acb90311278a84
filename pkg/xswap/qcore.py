"""
Dense complex linear algebra for 2, 4 and 16 dimensional Hilbert spaces

Matrices are square numpy complex arrays. Subsystems are numbered left to
right in tensor order and flat indices are big-endian mixed radix, so the
basis vector (i0, ..., ik-1) of dims (d0, ..., dk-1) sits at
i0*d1*...*dk-1 + ... + ik-1.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from xswap.config import ATOL
from xswap.utils import DimensionMismatchError, InvalidStateError, NonHermitianError


@dataclass(frozen=True)
class Tolerance:
    """ Absolute tolerance used by validity checks """

    atol: float = ATOL

    def __post_init__(self):
        if not self.atol > 0:
            raise ValueError("Tolerance atol must be > 0, got %r" % self.atol)


DEFAULT_TOLERANCE = Tolerance()


@dataclass(frozen=True)
class DensityDiagnostics:
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    passed: bool


class BellLabel(Enum):
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"


BELL_LABELS = list(BellLabel)

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def as_cmatrix(a):
    """ Return a as a square complex array, rejecting NaN and Inf entries """
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError("Expected a square matrix, got shape %s" % (m.shape,))
    if not np.all(np.isfinite(m)):
        raise InvalidStateError("Matrix has non finite entries")
    return m


def kron(a, b):
    """ Kronecker product, entry (i*db+k, j*db+l) = a[i, j] * b[k, l] """
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def dagger(a):
    """ Conjugate transpose """
    return as_cmatrix(a).conj().T


def bell_vector(label):
    """ Bell state of two qubits in the basis 00, 01, 10, 11 """
    s = 1 / np.sqrt(2)
    vectors = {
        BellLabel.PHI_PLUS: [s, 0, 0, s],
        BellLabel.PHI_MINUS: [s, 0, 0, -s],
        BellLabel.PSI_PLUS: [0, s, s, 0],
        BellLabel.PSI_MINUS: [0, s, -s, 0],
    }
    return np.array(vectors[BellLabel(label)], dtype=complex)


def projector(vector):
    """ Rank-1 projector |v><v| of a normalized vector """
    v = np.asarray(vector, dtype=complex).reshape(-1, 1)
    return v @ v.conj().T


def permute_subsystems(rho, subsystem_dims, order):
    """
    Reorder the tensor factors of rho
    order[k] is the old index of the subsystem placed at position k
    """
    rho = as_cmatrix(rho)
    dims = list(subsystem_dims)
    n = len(dims)
    if int(np.prod(dims)) != rho.shape[0]:
        raise DimensionMismatchError(
            "Subsystem dims %s do not match matrix dimension %d" % (dims, rho.shape[0])
        )
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of range(%d)" % n)
    tensor = rho.reshape(dims + dims)
    tensor = np.transpose(tensor, list(order) + [n + k for k in order])
    return tensor.reshape(rho.shape)


def partial_trace(rho, subsystem_dims, keep):
    """
    Trace out every subsystem not in keep
    Keeping nothing returns the 1x1 matrix holding trace(rho)
    """
    rho = as_cmatrix(rho)
    dims = list(subsystem_dims)
    n = len(dims)
    if any(d < 1 for d in dims) or int(np.prod(dims)) != rho.shape[0]:
        raise DimensionMismatchError(
            "Subsystem dims %s do not match matrix dimension %d" % (dims, rho.shape[0])
        )
    keep = sorted(set(keep))
    if any(k < 0 or k >= n for k in keep):
        raise DimensionMismatchError("keep %s out of range for %d subsystems" % (keep, n))
    # repeated labels between row and column axes are summed over by einsum
    row_labels = list(range(n))
    col_labels = [k + n if k in keep else k for k in range(n)]
    out_labels = keep + [k + n for k in keep]
    reduced = np.einsum(rho.reshape(dims + dims), row_labels + col_labels, out_labels)
    d = int(np.prod([dims[k] for k in keep]))
    return np.asarray(reduced).reshape(d, d)


def hermiticity_defect(a):
    a = as_cmatrix(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def hermitian_eigenvalues(a, tol=DEFAULT_TOLERANCE):
    """ Real eigenvalues of a Hermitian matrix, in descending order """
    a = as_cmatrix(a)
    defect = hermiticity_defect(a)
    if defect > tol.atol:
        raise NonHermitianError("Matrix is not Hermitian, max |A - A^H| = %.3e" % defect)
    eigenvalues = np.linalg.eigvalsh((a + a.conj().T) / 2)
    return eigenvalues[::-1]


def hermitian_eigh(a, tol=DEFAULT_TOLERANCE):
    """ Eigenvalues (descending) and matching eigenvectors as columns """
    a = as_cmatrix(a)
    defect = hermiticity_defect(a)
    if defect > tol.atol:
        raise NonHermitianError("Matrix is not Hermitian, max |A - A^H| = %.3e" % defect)
    eigenvalues, eigenvectors = np.linalg.eigh((a + a.conj().T) / 2)
    return eigenvalues[::-1], eigenvectors[:, ::-1]


def validate_density(rho, tol=DEFAULT_TOLERANCE):
    """
    Return DensityDiagnostics for rho
    Passes iff rho is Hermitian, has unit trace and no eigenvalue below -atol
    """
    rho = as_cmatrix(rho)
    h_defect = hermiticity_defect(rho)
    t_defect = float(abs(np.trace(rho) - 1))
    min_eigenvalue = float(np.min(np.linalg.eigvalsh((rho + rho.conj().T) / 2)))
    passed = h_defect <= tol.atol and t_defect <= tol.atol and min_eigenvalue >= -tol.atol
    return DensityDiagnostics(h_defect, t_defect, min_eigenvalue, passed)
