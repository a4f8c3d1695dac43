"""
Statevector container.

Amplitude index b = Σ_q b_q·2^q, i.e. qubit q is bit q of the index. Bitstrings
are rendered with qubit 0 first, so index 3 on four qubits reads "1100".
"""

from dataclasses import dataclass

import numpy as np

from effbasis.core.errors import DimensionError


def index_to_bitstring(index: int, n_qubits: int) -> str:
    return "".join("1" if (index >> q) & 1 else "0" for q in range(n_qubits))


def bitstring_to_index(bits: str) -> int:
    if set(bits) - {"0", "1"}:
        raise ValueError(f"'{bits}' is not a bitstring")
    return sum(1 << q for q, b in enumerate(bits) if b == "1")


@dataclass(frozen=True, eq=False)
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n_qubits,):
            raise DimensionError(
                f"{amps.shape} amplitudes do not describe {self.n_qubits} qubits"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("statevector has non-finite amplitudes")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis_state(cls, n_qubits: int, bits: str | int) -> "StateVector":
        index = bitstring_to_index(bits) if isinstance(bits, str) else bits
        if isinstance(bits, str) and len(bits) != n_qubits:
            raise DimensionError(f"bitstring '{bits}' has length != {n_qubits}")
        amps = np.zeros(1 << n_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n_qubits, amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        norm = self.norm()
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.n_qubits, self.amplitudes / norm)

    def overlap(self, other: "StateVector") -> complex:
        """⟨self|other⟩."""
        if other.n_qubits != self.n_qubits:
            raise DimensionError(
                f"overlap between {self.n_qubits}- and {other.n_qubits}-qubit states"
            )
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def max_imag(self) -> float:
        return float(np.max(np.abs(self.amplitudes.imag)))
