"""Dense Hermitian eigen-decomposition with a deterministic sign convention."""

import numpy as np
import scipy.linalg
from structlog import get_logger

from effbasis.core.errors import DimensionError, EigenSolverError

logger = get_logger()

# Dense LAPACK path only.
EIGEN_DIMENSION_CAP = 4096
HERMITICITY_TOLERANCE = 1e-9


def fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real and positive."""
    vectors = np.array(vectors)
    if vectors.size == 0:
        return vectors
    pivots = np.argmax(np.abs(vectors), axis=0)
    for col, row in enumerate(pivots):
        pivot = vectors[row, col]
        if pivot == 0:
            continue
        vectors[:, col] *= np.conj(pivot) / abs(pivot)
    if np.iscomplexobj(vectors) and not np.any(vectors.imag):
        vectors = vectors.real
    return vectors


def check_hermitian(a: np.ndarray, tol: float, name: str = "matrix") -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    asymmetry = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if asymmetry > tol * scale:
        raise EigenSolverError(f"{name} is not Hermitian (deviation {asymmetry:.3e})")


def symmetric_eigen(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix.

    Complex Hermitian input is accepted as well. Eigenvector phases follow
    `fix_phases`.

    Raises:
        DimensionError: non-square input or dimension above EIGEN_DIMENSION_CAP.
        EigenSolverError: asymmetric input or LAPACK non-convergence.
    """
    a = np.asarray(a)
    check_hermitian(a, HERMITICITY_TOLERANCE)
    if a.shape[0] > EIGEN_DIMENSION_CAP:
        raise DimensionError(
            f"dimension {a.shape[0]} exceeds the dense eigen cap {EIGEN_DIMENSION_CAP}"
        )
    if a.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0))

    sym = 0.5 * (a + a.conj().T)
    try:
        values, vectors = scipy.linalg.eigh(sym)
    except np.linalg.LinAlgError as e:
        logger.error("eigensolver_failed", dim=a.shape[0], error=str(e))
        raise EigenSolverError(f"eigen-decomposition did not converge: {e}") from e
    return values, fix_phases(vectors)
