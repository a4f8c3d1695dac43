"""
Exact-diagonalization oracle restricted to a particle-number / S_z sector.
"""

import numpy as np
from structlog import get_logger

from effbasis.core.config import settings
from effbasis.core.errors import DimensionError
from effbasis.effective.eigen import symmetric_eigen
from effbasis.hamiltonian.qubit import QubitHamiltonian, basis_indices
from effbasis.models.state import StateVector

logger = get_logger()


def _even_mask(n_qubits: int) -> int:
    return sum(1 << q for q in range(0, n_qubits, 2))


def default_ms2(n_electrons: int) -> int:
    """Lowest |2S_z| compatible with the electron count."""
    return n_electrons % 2


def sector_indices(n_qubits: int, n_electrons: int, ms2: int | None = None) -> np.ndarray:
    """Basis indices with the given electron count and 2·S_z.

    Spin-up electrons sit on even qubits, spin-down on odd qubits.
    """
    ms2 = default_ms2(n_electrons) if ms2 is None else ms2
    if (n_electrons + ms2) % 2:
        raise ValueError(f"MS2={ms2} is incompatible with {n_electrons} electrons")
    n_up = (n_electrons + ms2) // 2
    n_down = n_electrons - n_up
    idx = basis_indices(n_qubits)
    even = _even_mask(n_qubits)
    up = np.bitwise_count(idx & even)
    down = np.bitwise_count(idx & ~even & ((1 << n_qubits) - 1))
    return idx[(up == n_up) & (down == n_down)]


def sector_matrix(qh: QubitHamiltonian, sector: np.ndarray) -> np.ndarray:
    """Dense block of qh on the given basis indices."""
    position = np.full(qh.dim, -1, dtype=np.int64)
    position[sector] = np.arange(sector.size)
    dtype = np.complex128 if any(np.iscomplexobj(w) for _, w in qh.flip_groups) else np.float64
    block = np.zeros((sector.size, sector.size), dtype=dtype)
    rows = np.arange(sector.size)
    for x, weights in qh.flip_groups:
        cols = position[sector ^ x]
        keep = cols >= 0
        block[rows[keep], cols[keep]] += weights[sector[keep]]
    return block


def _check_size(qh: QubitHamiltonian) -> None:
    if qh.n_qubits > settings.MAX_DENSE_QUBITS:
        raise DimensionError(
            f"{qh.n_qubits} qubits exceed the dense cap of {settings.MAX_DENSE_QUBITS}"
        )


def exact_ground_state(
    qh: QubitHamiltonian,
    n_electrons: int,
    ms2: int | None = None,
) -> tuple[float, StateVector]:
    """Lowest eigenpair of qh inside the (n_electrons, ms2) sector.

    Returns:
        (energy in Hartree, normalized StateVector embedded in the full register).
    """
    _check_size(qh)
    sector = sector_indices(qh.n_qubits, n_electrons, ms2)
    if sector.size == 0:
        raise ValueError(f"empty sector for {n_electrons} electrons on {qh.n_qubits} qubits")

    values, vectors = symmetric_eigen(sector_matrix(qh, sector))
    amps = np.zeros(qh.dim, dtype=np.complex128)
    amps[sector] = vectors[:, 0]
    state = StateVector(qh.n_qubits, amps).normalized()

    logger.debug(
        "exact_ground_state",
        n_qubits=qh.n_qubits,
        sector_dim=int(sector.size),
        energy=float(values[0]),
    )
    return float(values[0]), state


def hartree_fock_state(
    qh: QubitHamiltonian,
    n_electrons: int,
    ms2: int | None = None,
) -> StateVector:
    """Sector determinant with the lowest diagonal energy (lowest index on ties)."""
    sector = sector_indices(qh.n_qubits, n_electrons, ms2)
    diagonal = qh.diagonal()[sector]
    return StateVector.basis_state(qh.n_qubits, int(sector[int(np.argmin(diagonal))]))
