"""In-place gate kernels on dense little-endian amplitude arrays."""

from functools import cache

import numpy as np

from effbasis.hamiltonian.qubit import PauliString, apply_pauli, basis_indices


@cache
def _pair_indices(n_qubits: int, target: int, control: int | None) -> tuple[np.ndarray, np.ndarray]:
    """Indices with target bit 0 (and control bit 1, if given) and their partners."""
    idx = basis_indices(n_qubits)
    mask = ((idx >> target) & 1) == 0
    if control is not None:
        mask &= ((idx >> control) & 1) == 1
    low = idx[mask]
    return low, low | (1 << target)


@cache
def pauli_from_label(label: str) -> PauliString:
    return PauliString.from_label(label)


def apply_x(amps: np.ndarray, n_qubits: int, target: int, control: int | None = None) -> None:
    low, high = _pair_indices(n_qubits, target, control)
    amps[low], amps[high] = amps[high], amps[low].copy()


def apply_ry(
    amps: np.ndarray, n_qubits: int, target: int, angle: float, control: int | None = None
) -> None:
    """RY(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]."""
    low, high = _pair_indices(n_qubits, target, control)
    c, s = np.cos(0.5 * angle), np.sin(0.5 * angle)
    a0, a1 = amps[low].copy(), amps[high].copy()
    amps[low] = c * a0 - s * a1
    amps[high] = s * a0 + c * a1


def apply_pauli_rotation(amps: np.ndarray, pauli: PauliString, angle: float) -> np.ndarray:
    """exp(−i(θ/2)P)v = cos(θ/2)v − i sin(θ/2)Pv."""
    return np.cos(0.5 * angle) * amps - 1j * np.sin(0.5 * angle) * apply_pauli(pauli, amps)
