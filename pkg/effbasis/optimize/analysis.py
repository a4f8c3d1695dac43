"""Configuration-level decomposition of optimized G(N,M) wavefunctions."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from effbasis.core.config import settings
from effbasis.core.errors import DimensionError
from effbasis.graphs.circuits import build_edge_circuit, phi_name, theta_name
from effbasis.models.graph import BasisSpec
from effbasis.models.state import StateVector, bitstring_to_index
from effbasis.optimize.gnm import GNMResult
from effbasis.simulator.statevector import configuration_amplitudes, simulate

Configurations = list[tuple[str, float | complex]]


@dataclass(frozen=True)
class ComponentAnalysis:
    index: int
    label: str
    component: Configurations
    total: Configurations
    normalized_coefficients: np.ndarray
    projection: float


def _phase_fixed(amps: np.ndarray) -> tuple[np.ndarray, float]:
    pivot = amps[np.argmax(np.abs(amps))]
    sign = 1.0 if pivot.real >= 0 else -1.0
    return sign * amps, sign


def total_wavefunction(result: GNMResult, basis: BasisSpec) -> StateVector:
    """Σ_k c_k |ψ_k(θ_k)⟩ at the result's angles, normalized."""
    kets = [simulate(c, b).amplitudes for c, b in zip(basis.circuits, result.bindings)]
    amps = sum(ck * ket for ck, ket in zip(result.coefficients, kets))
    return StateVector(basis.circuits[0].n_qubits, amps).normalized()


def analyze_component(
    result: GNMResult,
    basis: BasisSpec,
    k: int,
    threshold: float | None = None,
) -> ComponentAnalysis:
    """Decompose circuit k's state and the total wavefunction into configurations.

    Each component state is sign-fixed so its largest amplitude is positive;
    `normalized_coefficients` are the expansion coefficients in that
    convention scaled to unit Euclidean length. `projection` is ⟨ψ_k|Ψ⟩.

    Raises:
        DimensionError: k outside the basis.
    """
    if not 0 <= k < len(basis):
        raise DimensionError(f"component {k} outside 0..{len(basis) - 1}")
    threshold = settings.AMPLITUDE_THRESHOLD if threshold is None else threshold

    signs = []
    component = None
    for i, (circuit, binding) in enumerate(zip(basis.circuits, result.bindings)):
        amps, sign = _phase_fixed(simulate(circuit, binding).amplitudes)
        signs.append(sign)
        if i == k:
            component = StateVector(circuit.n_qubits, amps)
    coefficients = np.asarray(result.coefficients, dtype=float) * np.array(signs)
    coefficients = coefficients / np.linalg.norm(coefficients)

    total = total_wavefunction(result, basis)
    return ComponentAnalysis(
        index=k,
        label=basis.labels[k],
        component=configuration_amplitudes(component, threshold),
        total=configuration_amplitudes(total, threshold),
        normalized_coefficients=coefficients,
        projection=float(component.overlap(total).real),
    )


def pattern_projection(state: StateVector, pattern: Sequence[tuple[str, float]]) -> float:
    """Mean of sign·amplitude over (bitstring, sign) pairs.

    For a state a(|x₁⟩ + |x₂⟩ − |x₃⟩ − |x₄⟩) + … this returns a.
    """
    if not pattern:
        raise ValueError("empty pattern")
    values = []
    for bits, sign in pattern:
        if len(bits) != state.n_qubits:
            raise DimensionError(f"bitstring '{bits}' has length != {state.n_qubits}")
        values.append(sign * state.amplitudes[bitstring_to_index(bits)].real)
    return float(np.mean(values))


def edge_states(
    basis: BasisSpec,
    k: int,
    binding: dict[str, float] | None = None,
    threshold: float | None = None,
) -> dict[tuple[int, int], Configurations]:
    """Four-qubit state of every edge of graph k in its local frame.

    Qubits are ordered (p↑, p↓, q↑, q↓); angles come from `binding`
    (default: the circuit's parameter table).
    """
    if not 0 <= k < len(basis):
        raise DimensionError(f"component {k} outside 0..{len(basis) - 1}")
    graph = basis.graphs[k]
    values = binding if binding is not None else basis.circuits[k].parameters
    local = build_edge_circuit((0, 1), "edge", 4)
    states = {}
    for p, q in graph.edges:
        local_binding = {
            theta_name("edge", 0, 1): values[theta_name(graph.label, p, q)],
            phi_name("edge", 0, 1): values[phi_name(graph.label, p, q)],
        }
        states[(p, q)] = configuration_amplitudes(simulate(local, local_binding), threshold)
    return states
