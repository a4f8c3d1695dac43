"""Tests for the dense statevector simulator and matrix-element helpers."""

import numpy as np
import pytest
import scipy.linalg
from pydantic import ValidationError

from effbasis.core.errors import (
    CircuitValidationError,
    DimensionError,
    UnboundParameterError,
)
from effbasis.graphs.circuits import build_edge_circuit, build_graph_circuit, theta_name
from effbasis.hamiltonian.qubit import PauliString, QubitHamiltonian
from effbasis.models.circuit import Circuit, Gate
from effbasis.models.graph import MolecularGraph
from effbasis.models.state import StateVector, bitstring_to_index, index_to_bitstring
from effbasis.simulator.statevector import (
    configuration_amplitudes,
    expectation,
    particle_number_variance,
    simulate,
    state_overlap,
    transition_elements,
)
from tests.helpers import pauli_matrix


def _ry(angle: float, n_qubits: int = 1, qubit: int = 0) -> Circuit:
    return Circuit(
        n_qubits=n_qubits,
        gates=[Gate(kind="RY", qubits=(qubit,), param="a")],
        parameters={"a": angle},
    )


class TestBitstrings:
    def test_qubit_zero_first(self):
        assert index_to_bitstring(3, 4) == "1100"
        assert bitstring_to_index("0011") == 12

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            bitstring_to_index("0120")


class TestSimulate:
    def test_empty_circuit_is_vacuum(self):
        v = simulate(Circuit(n_qubits=2))
        assert np.allclose(v.amplitudes, [1, 0, 0, 0])

    def test_ry_pi_flips(self):
        v = simulate(_ry(np.pi))
        assert np.allclose(v.amplitudes, [0.0, 1.0], atol=1e-12)

    def test_override_parameters(self):
        v = simulate(_ry(0.0), {"a": np.pi / 2})
        assert np.allclose(v.amplitudes, [np.sqrt(0.5), np.sqrt(0.5)])

    def test_cnot_and_prefix(self):
        circuit = Circuit(
            n_qubits=2,
            gates=[Gate(kind="X", qubits=(0,)), Gate(kind="CNOT", qubits=(0, 1))],
            prefix_length=1,
        )
        assert abs(simulate(circuit).amplitudes[3]) == pytest.approx(1.0)

    @pytest.mark.parametrize("control_set, expected", [(False, 0), (True, 3)])
    def test_controlled_ry(self, control_set, expected):
        gates = [Gate(kind="X", qubits=(0,))] if control_set else []
        gates.append(Gate(kind="CRY", qubits=(0, 1), value=np.pi))
        circuit = Circuit(n_qubits=2, gates=gates, prefix_length=len(gates) - 1)
        assert abs(simulate(circuit).amplitudes[expected]) == pytest.approx(1.0)

    def test_pauli_rotation_matches_expm(self):
        angle, multiplier = 0.7, -0.5
        gate = Gate(kind="PAULI_ROT", qubits=(0, 1, 2), value=angle, multiplier=multiplier, pauli="X0 Z1 Y2")
        circuit = Circuit(
            n_qubits=3,
            gates=[Gate(kind="X", qubits=(0,)), gate],
            prefix_length=1,
        )
        start = np.zeros(8)
        start[1] = 1.0
        expected = scipy.linalg.expm(-0.5j * angle * multiplier * pauli_matrix("X0 Z1 Y2", 3)) @ start
        assert np.allclose(simulate(circuit).amplitudes, expected, atol=1e-12)

    def test_unbound_parameter(self):
        circuit = Circuit.model_construct(
            n_qubits=1,
            gates=[Gate(kind="RY", qubits=(0,), param="a")],
            parameters={},
            prefix_length=0,
            number_conserving=True,
        )
        with pytest.raises(UnboundParameterError, match="a"):
            simulate(circuit)

    def test_invalid_qubit_rejected_at_construction(self):
        with pytest.raises(ValidationError, match="n_qubits"):
            Circuit(n_qubits=2, gates=[Gate(kind="X", qubits=(2,))], prefix_length=1)

    def test_x_outside_prefix_rejected(self):
        with pytest.raises(ValidationError, match="prefix"):
            Circuit(n_qubits=1, gates=[Gate(kind="X", qubits=(0,))])

    def test_dense_cap(self, monkeypatch):
        from effbasis.core.config import settings

        monkeypatch.setattr(settings, "MAX_DENSE_QUBITS", 2)
        with pytest.raises(DimensionError):
            simulate(Circuit(n_qubits=3))

    def test_json_round_trip_simulates_identically(self):
        circuit = build_edge_circuit((0, 1), "g", 4).bind({theta_name("g", 0, 1): 0.3})
        again = Circuit.model_validate_json(circuit.model_dump_json())
        assert np.allclose(simulate(again).amplitudes, simulate(circuit).amplitudes)

    def test_graph_state_conserves_electrons(self):
        graph = MolecularGraph(n_spatial=4, edges=[(0, 2), (1, 3)])
        circuit = build_graph_circuit(graph, augmented=True)
        rng = np.random.default_rng(5)
        binding = {name: float(rng.uniform(-np.pi, np.pi)) for name in circuit.parameters}
        mean, variance = particle_number_variance(simulate(circuit, binding))
        assert mean == pytest.approx(4.0)
        assert variance == pytest.approx(0.0, abs=1e-10)


class TestExpectation:
    def test_identity(self):
        qh = QubitHamiltonian(2, ((3.0, PauliString()),))
        assert expectation(qh, simulate(_ry(0.4, 2))) == pytest.approx(3.0)

    def test_z_on_occupied(self):
        qh = QubitHamiltonian(1, ((-1.0, PauliString.from_label("Z0")),))
        assert expectation(qh, simulate(_ry(np.pi))) == pytest.approx(1.0)

    def test_dimension_mismatch(self):
        qh = QubitHamiltonian(2, ((1.0, PauliString()),))
        with pytest.raises(DimensionError):
            expectation(qh, simulate(_ry(0.1)))


class TestTransitionElements:
    def test_repeated_state(self, h2_qubit):
        v = simulate(build_edge_circuit((0, 1), "g", 4), {theta_name("g", 0, 1): 0.4})
        hmat, smat = transition_elements(h2_qubit, [v, v])
        assert np.allclose(smat, np.ones((2, 2)))
        assert np.allclose(hmat, expectation(h2_qubit, v))

    def test_orthogonal_configurations(self, h2_qubit):
        states = [StateVector.basis_state(4, "1100"), StateVector.basis_state(4, "0011")]
        hmat, smat = transition_elements(h2_qubit, states)
        assert np.allclose(smat, np.eye(2))
        assert hmat[0, 1] == pytest.approx(hmat[1, 0])
        assert abs(hmat[0, 1]) == pytest.approx(0.1813)

    def test_complex_states_rejected(self):
        qh = QubitHamiltonian(1, ((1.0, PauliString.from_label("X0")),))
        plus_i = StateVector(1, np.array([1.0, 1.0j]) / np.sqrt(2))
        states = [StateVector.basis_state(1, 0), plus_i]
        with pytest.raises(CircuitValidationError, match="imaginary"):
            transition_elements(qh, states)
        hmat, smat = transition_elements(qh, states, allow_complex=True)
        assert np.allclose(hmat, hmat.conj().T)
        assert smat[0, 1] == pytest.approx(1.0j / np.sqrt(2))

    def test_mismatched_register(self, h2_qubit):
        with pytest.raises(DimensionError):
            transition_elements(h2_qubit, [StateVector.basis_state(2, "10")])


class TestConfigurationAmplitudes:
    def test_single_configuration(self):
        assert configuration_amplitudes(StateVector.basis_state(4, "1100")) == [("1100", 1.0)]

    def test_edge_superposition(self):
        v = simulate(build_edge_circuit((0, 1), "g", 4), {theta_name("g", 0, 1): np.pi / 2})
        rows = configuration_amplitudes(v, 0.1)
        assert [bits for bits, _ in rows] == ["0011", "1100"]
        assert all(a == pytest.approx(np.sqrt(0.5)) for _, a in rows)
        assert all(isinstance(a, float) for _, a in rows)

    def test_threshold_filters(self):
        v = StateVector(1, np.array([0.999, 0.0447]))
        assert [bits for bits, _ in configuration_amplitudes(v, 0.05)] == ["0"]


class TestOverlap:
    def test_overlap_of_orthogonal_states(self):
        assert state_overlap(StateVector.basis_state(2, "10"), StateVector.basis_state(2, "01")) == 0
