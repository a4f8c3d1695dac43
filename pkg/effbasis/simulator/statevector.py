"""
Dense statevector simulation of the circuit IR plus the matrix elements the
effective-basis solvers need.
"""

from collections.abc import Mapping, Sequence

import numpy as np
from structlog import get_logger

from effbasis.core.config import settings
from effbasis.core.errors import (
    CircuitValidationError,
    DimensionError,
    UnboundParameterError,
)
from effbasis.hamiltonian.qubit import QubitHamiltonian, number_operator
from effbasis.models.circuit import Circuit
from effbasis.models.state import StateVector, index_to_bitstring
from effbasis.simulator.kernels import (
    apply_pauli_rotation,
    apply_ry,
    apply_x,
    pauli_from_label,
)

logger = get_logger()

IMAG_TOLERANCE = 1e-9
REAL_STATE_TOLERANCE = 1e-10


def _resolve_binding(circuit: Circuit, params: Mapping[str, float] | None) -> dict[str, float]:
    binding = dict(circuit.parameters)
    if params:
        binding.update(params)
    missing = [name for name in circuit.parameter_names if name not in binding]
    if missing:
        raise UnboundParameterError(f"unbound parameters: {missing}")
    return binding


def simulate(circuit: Circuit, params: Mapping[str, float] | None = None) -> StateVector:
    """Apply the circuit to |0…0⟩.

    Args:
        circuit: Gate sequence; its parameter table supplies default values.
        params: Optional overrides, e.g. an optimizer's trial point.

    Raises:
        UnboundParameterError: a gate parameter has no value.
        DimensionError: the register exceeds settings.MAX_DENSE_QUBITS.
    """
    n = circuit.n_qubits
    if n > settings.MAX_DENSE_QUBITS:
        raise DimensionError(f"{n} qubits exceed the dense cap of {settings.MAX_DENSE_QUBITS}")
    binding = _resolve_binding(circuit, params)

    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    for gate in circuit.gates:
        if any(q >= n for q in gate.qubits):
            raise CircuitValidationError(f"{gate.kind} addresses qubit outside {n}-qubit register")
        match gate.kind:
            case "X":
                apply_x(amps, n, gate.qubits[0])
            case "CNOT":
                apply_x(amps, n, gate.qubits[1], control=gate.qubits[0])
            case "RY":
                apply_ry(amps, n, gate.qubits[0], gate.angle(binding))
            case "CRY":
                apply_ry(amps, n, gate.qubits[1], gate.angle(binding), control=gate.qubits[0])
            case "PAULI_ROT":
                amps = apply_pauli_rotation(amps, pauli_from_label(gate.pauli), gate.angle(binding))
    return StateVector(n, amps)


def expectation(qh: QubitHamiltonian, v: StateVector) -> float:
    """Re ⟨v|H|v⟩ for a normalized v."""
    if v.n_qubits != qh.n_qubits:
        raise DimensionError(f"{qh.n_qubits}-qubit operator, {v.n_qubits}-qubit state")
    value = np.vdot(v.amplitudes, qh.apply(v.amplitudes))
    if abs(value.imag) > IMAG_TOLERANCE:
        raise CircuitValidationError(f"⟨H⟩ has imaginary part {value.imag:.3e}")
    return float(value.real)


def transition_elements(
    qh: QubitHamiltonian,
    states: Sequence[StateVector],
    allow_complex: bool = False,
) -> tuple[np.ndarray, np.ndarray]:
    """H_ij = ⟨ψ_i|H|ψ_j⟩ and S_ij = ⟨ψ_i|ψ_j⟩.

    Real symmetric matrices are returned unless `allow_complex`, in which
    case Hermitian complex matrices are returned as they are.

    Raises:
        DimensionError: states of different size or not matching qh.
        CircuitValidationError: non-negligible imaginary parts in real mode.
    """
    if not states:
        raise DimensionError("no states given")
    for v in states:
        if v.n_qubits != qh.n_qubits:
            raise DimensionError(f"{qh.n_qubits}-qubit operator, {v.n_qubits}-qubit state")

    kets = np.stack([v.amplitudes for v in states], axis=1)
    h_kets = np.stack([qh.apply(v.amplitudes) for v in states], axis=1)
    hmat = kets.conj().T @ h_kets
    smat = kets.conj().T @ kets
    hmat = 0.5 * (hmat + hmat.conj().T)
    smat = 0.5 * (smat + smat.conj().T)
    if allow_complex:
        return hmat, smat

    worst = max(float(np.max(np.abs(hmat.imag))), float(np.max(np.abs(smat.imag))))
    if worst > IMAG_TOLERANCE:
        raise CircuitValidationError(
            f"matrix elements have imaginary parts up to {worst:.3e}; basis states are not real"
        )
    return hmat.real, smat.real


def configuration_amplitudes(
    v: StateVector,
    threshold: float | None = None,
) -> list[tuple[str, float | complex]]:
    """Basis configurations with |amplitude| ≥ threshold, largest first.

    Amplitudes are returned as floats when the state is real. Ties are
    ordered by bitstring so the listing is deterministic.
    """
    threshold = settings.AMPLITUDE_THRESHOLD if threshold is None else threshold
    amps = v.amplitudes
    real = v.max_imag() < REAL_STATE_TOLERANCE
    selected = np.flatnonzero(np.abs(amps) >= threshold)
    rows = [
        (
            index_to_bitstring(int(i), v.n_qubits),
            float(amps[i].real) if real else complex(amps[i]),
        )
        for i in selected
    ]
    rows.sort(key=lambda r: (-round(abs(r[1]), 12), r[0]))
    return rows


def state_overlap(u: StateVector, v: StateVector) -> complex:
    """⟨u|v⟩."""
    return u.overlap(v)


def particle_number_variance(v: StateVector) -> tuple[float, float]:
    """(⟨N⟩, ⟨N²⟩ − ⟨N⟩²) of the total electron number."""
    n_op = number_operator(v.n_qubits)
    n_v = n_op.apply(v.amplitudes)
    mean = float(np.vdot(v.amplitudes, n_v).real)
    second = float(np.vdot(n_v, n_v).real)
    return mean, second - mean * mean
