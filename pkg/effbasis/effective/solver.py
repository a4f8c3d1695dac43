"""
Generalized eigenvalue problem H c = λ S c over a non-orthogonal basis,
solved by canonical orthogonalization.
"""

from dataclasses import dataclass, field

import numpy as np
from structlog import get_logger

from effbasis.core.config import settings
from effbasis.core.errors import EigenSolverError, LinearDependenceError
from effbasis.effective.eigen import check_hermitian, fix_phases, symmetric_eigen

logger = get_logger()

MATRIX_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class EffectiveProblem:
    """Hamiltonian and overlap matrices of an effective basis."""

    hmat: np.ndarray
    smat: np.ndarray
    labels: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        hmat = np.asarray(self.hmat)
        smat = np.asarray(self.smat)
        if hmat.shape != smat.shape:
            raise EigenSolverError(f"H {hmat.shape} and S {smat.shape} differ in shape")
        check_hermitian(hmat, MATRIX_TOLERANCE, "H")
        check_hermitian(smat, MATRIX_TOLERANCE, "S")
        if smat.size and np.max(np.abs(np.diag(smat) - 1.0)) > MATRIX_TOLERANCE:
            raise EigenSolverError("S must have a unit diagonal (normalized basis states)")
        object.__setattr__(self, "hmat", hmat)
        object.__setattr__(self, "smat", smat)

    @property
    def size(self) -> int:
        return self.hmat.shape[0]


@dataclass(frozen=True, eq=False)
class GeneralizedEigResult:
    ground_energy: float
    coefficients: np.ndarray
    retained_rank: int
    discarded_overlap_eigenvalues: list[float]
    condition_number: float
    min_overlap_eigenvalue: float
    eigenvalues: np.ndarray


def solve_generalized(
    prob: EffectiveProblem,
    threshold: float | None = None,
) -> GeneralizedEigResult:
    """Ground eigenpair of H c = λ S c.

    S = U s U†; eigenpairs with s below `threshold` are discarded, H is
    transformed with X = U_kept s_kept^{-1/2}, diagonalized, and the lowest
    eigenvector is mapped back as c = X v, so that c†Sc = 1. The largest
    coefficient is made real and positive.

    Raises:
        LinearDependenceError: every overlap eigenvalue falls below threshold.
        EigenSolverError: matrices fail the EffectiveProblem invariants.
    """
    threshold = settings.OVERLAP_THRESHOLD if threshold is None else threshold
    s_values, s_vectors = symmetric_eigen(prob.smat)
    if s_values.size and s_values[0] < -MATRIX_TOLERANCE:
        raise EigenSolverError(f"S is not positive semidefinite (eigenvalue {s_values[0]:.3e})")

    keep = s_values >= threshold
    if not np.any(keep):
        raise LinearDependenceError(
            f"all {s_values.size} overlap eigenvalues are below {threshold:g}"
        )
    discarded = [float(v) for v in s_values[~keep]]
    transform = s_vectors[:, keep] / np.sqrt(s_values[keep])

    h_reduced = transform.conj().T @ prob.hmat @ transform
    h_reduced = 0.5 * (h_reduced + h_reduced.conj().T)
    energies, vectors = symmetric_eigen(h_reduced)
    coefficients = fix_phases((transform @ vectors[:, :1]))[:, 0]

    s_min = float(s_values[0])
    condition = float(s_values[-1] / s_min) if s_min > 0 else float("inf")

    if discarded:
        logger.info(
            "overlap_eigenvalues_discarded",
            retained=int(np.count_nonzero(keep)),
            discarded=discarded,
            threshold=threshold,
        )
    return GeneralizedEigResult(
        ground_energy=float(energies[0]),
        coefficients=coefficients,
        retained_rank=int(np.count_nonzero(keep)),
        discarded_overlap_eigenvalues=discarded,
        condition_number=condition,
        min_overlap_eigenvalue=s_min,
        eigenvalues=energies,
    )
