"""
Pauli strings and real-weighted qubit Hamiltonians.

A Pauli string is kept in binary-symplectic form: bit q of `x_mask` marks an
X or Y on qubit q, bit q of `z_mask` a Z or Y. With n_Y the number of Y
factors, P = i^{n_Y} · X^x Z^z and therefore

    P|b⟩ = i^{n_Y} (−1)^{popcount(b & z)} |b ⊕ x⟩.

Products of strings are applied to dense amplitude arrays with that rule;
no operator matrix is ever formed.
"""

from dataclasses import dataclass
from functools import cache, cached_property

import numpy as np

from effbasis.core.errors import DimensionError, HamiltonianValidationError
from effbasis.models.state import StateVector

_PHASES = (1.0, 1.0j, -1.0, -1.0j)


@cache
def basis_indices(n_qubits: int) -> np.ndarray:
    idx = np.arange(1 << n_qubits, dtype=np.int64)
    idx.setflags(write=False)
    return idx


def parity_signs(indices: np.ndarray, mask: int) -> np.ndarray:
    """(−1)^{popcount(index & mask)} for every index."""
    return 1.0 - 2.0 * (np.bitwise_count(indices & mask) & 1)


@dataclass(frozen=True, order=True)
class PauliString:
    x_mask: int = 0
    z_mask: int = 0

    @classmethod
    def from_factors(cls, factors: dict[int, str]) -> "PauliString":
        x = z = 0
        for qubit, op in factors.items():
            if qubit < 0:
                raise ValueError(f"negative qubit index {qubit}")
            if op not in ("X", "Y", "Z"):
                raise ValueError(f"unknown Pauli factor '{op}' on qubit {qubit}")
            if op in ("X", "Y"):
                x |= 1 << qubit
            if op in ("Z", "Y"):
                z |= 1 << qubit
        return cls(x, z)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse 'X0 Z1 Y3'; the empty label is the identity."""
        factors: dict[int, str] = {}
        for token in label.split():
            qubit = int(token[1:])
            if qubit in factors:
                raise ValueError(f"qubit {qubit} appears twice in '{label}'")
            factors[qubit] = token[0]
        return cls.from_factors(factors)

    @property
    def factors(self) -> dict[int, str]:
        out = {}
        support = self.x_mask | self.z_mask
        q = 0
        while support >> q:
            if (support >> q) & 1:
                x, z = (self.x_mask >> q) & 1, (self.z_mask >> q) & 1
                out[q] = "Y" if x and z else ("X" if x else "Z")
            q += 1
        return out

    @property
    def label(self) -> str:
        return " ".join(f"{op}{q}" for q, op in self.factors.items())

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self.factors)

    @property
    def weight(self) -> int:
        return (self.x_mask | self.z_mask).bit_count()

    @property
    def n_y(self) -> int:
        return (self.x_mask & self.z_mask).bit_count()

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    def max_qubit(self) -> int:
        return (self.x_mask | self.z_mask).bit_length() - 1

    def __str__(self) -> str:
        return self.label or "I"


def apply_pauli(pauli: PauliString, amplitudes: np.ndarray) -> np.ndarray:
    """Return P·v for a dense amplitude array."""
    n_qubits = amplitudes.shape[0].bit_length() - 1
    source = basis_indices(n_qubits) ^ pauli.x_mask
    phase = _PHASES[pauli.n_y % 4] * parity_signs(source, pauli.z_mask)
    return phase * amplitudes[source]


@dataclass(frozen=True, eq=False)
class QubitHamiltonian:
    """Σ_t c_t P_t with real coefficients c_t in Hartree."""

    n_qubits: int
    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self) -> None:
        clean = []
        for coeff, pauli in self.terms:
            if isinstance(coeff, complex) or np.iscomplexobj(coeff):
                raise HamiltonianValidationError(
                    f"complex coefficient {coeff} on {pauli}; only real weights are allowed"
                )
            coeff = float(coeff)
            if not np.isfinite(coeff):
                raise HamiltonianValidationError(f"non-finite coefficient on {pauli}")
            if pauli.max_qubit() >= self.n_qubits:
                raise HamiltonianValidationError(
                    f"term {pauli} exceeds n_qubits={self.n_qubits}"
                )
            clean.append((coeff, pauli))
        object.__setattr__(self, "terms", tuple(clean))

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def one_norm(self) -> float:
        return float(sum(abs(c) for c, _ in self.terms))

    @cached_property
    def flip_groups(self) -> tuple[tuple[int, np.ndarray], ...]:
        """Terms grouped by X-mask: (x, W_x) with (Hv)[b] = Σ_x W_x[b]·v[b ⊕ x]."""
        idx = basis_indices(self.n_qubits)
        grouped: dict[int, np.ndarray] = {}
        for coeff, pauli in self.terms:
            source = idx ^ pauli.x_mask
            weights = coeff * _PHASES[pauli.n_y % 4] * parity_signs(source, pauli.z_mask)
            if pauli.x_mask in grouped:
                grouped[pauli.x_mask] = grouped[pauli.x_mask] + weights
            else:
                grouped[pauli.x_mask] = weights
        out = []
        for x in sorted(grouped):
            weights = grouped[x]
            if np.iscomplexobj(weights) and not np.any(weights.imag):
                weights = weights.real
            weights = np.ascontiguousarray(weights)
            weights.setflags(write=False)
            out.append((x, weights))
        return tuple(out)

    def diagonal(self) -> np.ndarray:
        """Diagonal of the matrix in the computational basis."""
        for x, weights in self.flip_groups:
            if x == 0:
                return np.real(weights)
        return np.zeros(self.dim)

    def apply(self, amplitudes: np.ndarray) -> np.ndarray:
        if amplitudes.shape != (self.dim,):
            raise DimensionError(
                f"vector of length {amplitudes.shape[0]} for a {self.n_qubits}-qubit operator"
            )
        idx = basis_indices(self.n_qubits)
        out = np.zeros(self.dim, dtype=np.complex128)
        for x, weights in self.flip_groups:
            out += weights * (amplitudes if x == 0 else amplitudes[idx ^ x])
        return out

    def __add__(self, other: "QubitHamiltonian") -> "QubitHamiltonian":
        if other.n_qubits != self.n_qubits:
            raise DimensionError("cannot add operators on different registers")
        return QubitHamiltonian(self.n_qubits, self.terms + other.terms)


def apply_hamiltonian(qh: QubitHamiltonian, v: StateVector) -> StateVector:
    """Σ_t c_t P_t v, evaluated term group by term group."""
    if v.n_qubits != qh.n_qubits:
        raise DimensionError(
            f"{qh.n_qubits}-qubit Hamiltonian applied to a {v.n_qubits}-qubit state"
        )
    return StateVector(v.n_qubits, qh.apply(v.amplitudes))


def number_operator(n_qubits: int) -> QubitHamiltonian:
    """N = Σ_q (I − Z_q)/2."""
    terms = [(0.5 * n_qubits, PauliString())]
    terms += [(-0.5, PauliString(z_mask=1 << q)) for q in range(n_qubits)]
    return QubitHamiltonian(n_qubits, tuple(terms))


def sz_operator(n_qubits: int) -> QubitHamiltonian:
    """S_z with spin-up on even and spin-down on odd qubits."""
    n_up = (n_qubits + 1) // 2
    terms = [(0.25 * (n_up - (n_qubits - n_up)), PauliString())]
    terms += [
        ((-0.25 if q % 2 == 0 else 0.25), PauliString(z_mask=1 << q))
        for q in range(n_qubits)
    ]
    return QubitHamiltonian(n_qubits, tuple(terms))
