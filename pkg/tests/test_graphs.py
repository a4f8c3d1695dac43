"""Tests for graph enumeration, circuit synthesis and resource counting."""

from itertools import combinations

import numpy as np
import pytest
import scipy.linalg
from pydantic import ValidationError

from effbasis.core.errors import CircuitValidationError, GraphError
from effbasis.graphs.circuits import (
    build_basis,
    build_edge_circuit,
    build_graph_circuit,
    orbital_rotation,
    phi_name,
    theta_name,
)
from effbasis.graphs.enumeration import enumerate_graphs, parse_graph
from effbasis.graphs.resources import compile_gate, count_resources
from effbasis.hamiltonian.exact import sector_indices
from effbasis.models.circuit import Circuit, Gate
from effbasis.models.graph import MolecularGraph
from effbasis.models.state import StateVector
from effbasis.simulator.statevector import configuration_amplitudes, simulate
from tests.helpers import pauli_matrix


def _edge_state(theta: float, phi: float = 0.0) -> np.ndarray:
    circuit = build_edge_circuit((0, 1), "g", 4)
    return simulate(circuit, {theta_name("g", 0, 1): theta, phi_name("g", 0, 1): phi}).amplitudes


def _configurations(amps: np.ndarray):
    return configuration_amplitudes(StateVector(4, amps), 1e-8)


def _rotation_generator() -> np.ndarray:
    """κ = (i/2)(X_i Z Y_j − Y_i Z X_j) summed over both spins of orbitals 0 and 1."""
    kappa = np.zeros((16, 16), dtype=complex)
    for i, j in ((0, 2), (1, 3)):
        xy = pauli_matrix(f"X{i} Z{i + 1} Y{j}", 4)
        yx = pauli_matrix(f"Y{i} Z{i + 1} X{j}", 4)
        kappa += 0.5j * (xy - yx)
    return kappa


class TestEnumerateGraphs:
    def test_four_orbitals(self):
        labels = [g.label for g in enumerate_graphs(4, 4)]
        assert labels == ["0-1|2-3", "0-2|1-3", "0-3|1-2"]

    @pytest.mark.parametrize("n, expected", [(2, 1), (4, 3), (6, 15)])
    def test_counts(self, n, expected):
        graphs = enumerate_graphs(n, n)
        assert len(graphs) == expected
        assert len({g.label for g in graphs}) == expected

    def test_fewer_pairs_than_orbitals(self):
        graphs = enumerate_graphs(4, 2)
        assert len(graphs) == 6
        assert all(len(g.edges) == 1 for g in graphs)

    def test_odd_electron_count(self):
        with pytest.raises(GraphError, match="even"):
            enumerate_graphs(4, 3)

    def test_too_many_pairs(self):
        with pytest.raises(GraphError, match="do not fit"):
            enumerate_graphs(2, 4)


class TestMolecularGraph:
    def test_edges_are_normalized(self):
        graph = MolecularGraph(n_spatial=4, edges=[(3, 2), (1, 0)])
        assert graph.edges == ((0, 1), (2, 3))
        assert graph.connected(1, 0)
        assert not graph.connected(0, 2)
        assert graph.n_electrons == 4

    def test_overlapping_edges(self):
        with pytest.raises(ValidationError, match="overlaps"):
            MolecularGraph(n_spatial=4, edges=[(0, 1), (1, 2)])

    @pytest.mark.parametrize(
        "edges, message",
        [([[0, 4]], "exceeds"), ([[1, 1]], "self-loop"), ([[0, 1, 2]], "exactly two")],
    )
    def test_parse_graph_errors(self, edges, message):
        with pytest.raises(GraphError, match=message):
            parse_graph(edges, 4)

    def test_parse_graph(self):
        assert parse_graph([[0, 3], [1, 2]], 4).label == "0-3|1-2"


class TestEdgeCircuit:
    def test_theta_zero_keeps_first_orbital_paired(self):
        rows = _configurations(_edge_state(0.0))
        assert rows == [("1100", pytest.approx(1.0))]

    def test_theta_pi_moves_pair(self):
        rows = _configurations(_edge_state(np.pi))
        assert rows == [("0011", pytest.approx(1.0))]

    def test_amplitudes_follow_half_angle(self):
        theta = 0.8
        amps = _edge_state(theta)
        assert amps[0b0011].real == pytest.approx(np.cos(theta / 2))
        assert amps[0b1100].real == pytest.approx(np.sin(theta / 2))

    def test_gate_layout(self):
        circuit = build_edge_circuit((0, 1), "g", 4)
        kinds = [g.kind for g in circuit.gates]
        assert kinds[:5] == ["X", "RY", "CNOT", "CNOT", "CNOT"]
        assert kinds[5:] == ["PAULI_ROT"] * 4
        assert circuit.prefix_length == 1
        assert circuit.parameters == {"g:theta(0,1)": 0.0, "g:phi(0,1)": 0.0}

    def test_orbital_rotation_matches_generator(self):
        theta, phi = np.pi / 2, 0.9
        expected = scipy.linalg.expm(0.5 * phi * _rotation_generator()) @ _edge_state(theta)
        assert np.allclose(_edge_state(theta, phi), expected, atol=1e-12)

    def test_orbital_rotation_keeps_state_real(self):
        assert np.max(np.abs(_edge_state(1.1, 0.7).imag)) < 1e-12

    def test_rejects_degenerate_edge(self):
        with pytest.raises(GraphError):
            build_edge_circuit((1, 1), "g", 4)

    def test_rejects_edge_outside_register(self):
        with pytest.raises(CircuitValidationError):
            build_edge_circuit((0, 3), "g", 4)

    def test_orbital_rotation_is_identity_at_zero(self):
        rotation = orbital_rotation(0, 2, "r", 6)
        prefixed = Circuit(
            n_qubits=6,
            gates=[Gate(kind="X", qubits=(0,)), Gate(kind="X", qubits=(1,)), *rotation.gates],
            parameters=rotation.parameters,
            prefix_length=2,
        )
        assert abs(simulate(prefixed).amplitudes[0b11]) == pytest.approx(1.0)


class TestBuildBasis:
    def test_parameter_counts(self):
        graphs = enumerate_graphs(4, 4)
        basic = build_basis(graphs)
        augmented = build_basis(graphs, augmented=True)
        assert [len(c.parameters) for c in basic.circuits] == [4, 4, 4]
        assert [len(c.parameters) for c in augmented.circuits] == [8, 8, 8]

    def test_single_edge_gains_nothing_from_augmentation(self):
        graph = MolecularGraph(n_spatial=2, edges=[(0, 1)])
        assert len(build_graph_circuit(graph, augmented=True).parameters) == 2

    def test_parameter_names_are_disjoint(self):
        basis = build_basis(enumerate_graphs(4, 4), augmented=True)
        names = [set(c.parameters) for c in basis.circuits]
        for a, b in combinations(names, 2):
            assert not a & b
        assert "0-3|1-2:ur(0,1)" in basis.circuits[2].parameters

    def test_states_stay_in_sector(self):
        basis = build_basis(enumerate_graphs(4, 4), augmented=True)
        sector = sector_indices(8, 4, 0)
        outside = np.ones(256, dtype=bool)
        outside[sector] = False
        rng = np.random.default_rng(2)
        for circuit in basis.circuits:
            binding = {n: float(rng.uniform(-np.pi, np.pi)) for n in circuit.parameters}
            amps = simulate(circuit, binding).amplitudes
            assert np.max(np.abs(amps[outside])) < 1e-12
            assert np.max(np.abs(amps.imag)) < 1e-12

    def test_distinct_graphs_give_distinct_states(self):
        basis = build_basis(enumerate_graphs(4, 4))
        rng = np.random.default_rng(9)
        states = [
            simulate(c, {n: float(rng.uniform(0.2, 1.2)) for n in c.parameters})
            for c in basis.circuits
        ]
        for u, v in combinations(states, 2):
            assert abs(u.overlap(v)) < 1 - 1e-6

    def test_empty(self):
        with pytest.raises(GraphError, match="at least one"):
            build_basis([])

    def test_duplicates(self):
        graph = MolecularGraph(n_spatial=4, edges=[(0, 1), (2, 3)])
        with pytest.raises(GraphError, match="repeated"):
            build_basis([graph, graph])

    def test_mixed_sizes(self):
        with pytest.raises(GraphError, match="disagree"):
            build_basis(
                [
                    MolecularGraph(n_spatial=2, edges=[(0, 1)]),
                    MolecularGraph(n_spatial=4, edges=[(0, 1)]),
                ]
            )


class TestResources:
    def test_empty_circuit(self):
        assert count_resources(Circuit(n_qubits=3)) == (0, 0, 0)

    def test_single_cnot(self):
        circuit = Circuit(n_qubits=2, gates=[Gate(kind="CNOT", qubits=(0, 1))])
        assert count_resources(circuit) == (1, 0, 1)

    def test_controlled_ry_costs_two_cnots(self):
        gate = Gate(kind="CRY", qubits=(0, 1), value=0.3)
        assert sum(p.kind == "CNOT" for p in compile_gate(gate)) == 2

    @pytest.mark.parametrize("label, k", [("Z0", 1), ("X0 Y1", 2), ("X0 Z1 Z2 Y3", 4)])
    def test_pauli_rotation_ladder(self, label, k):
        qubits = tuple(int(t[1:]) for t in label.split())
        gate = Gate(kind="PAULI_ROT", qubits=qubits, value=0.3, pauli=label)
        assert sum(p.kind == "CNOT" for p in compile_gate(gate)) == 2 * (k - 1)

    def test_pair_preparation(self):
        edge = build_edge_circuit((0, 1), "g", 4)
        prep = Circuit(
            n_qubits=4,
            gates=edge.gates[:5],
            parameters={"g:theta(0,1)": 0.0},
            prefix_length=1,
        )
        cnots, params, _ = count_resources(prep)
        assert (cnots, params) == (3, 1)

    def test_four_orbital_graphs(self):
        basis = build_basis(enumerate_graphs(4, 4))
        counts = {label: count_resources(c)[0] for label, c in zip(basis.labels, basis.circuits)}
        assert counts == {"0-1|2-3": 38, "0-2|1-3": 70, "0-3|1-2": 70}

    def test_parameter_count_matches_table(self):
        graph = MolecularGraph(n_spatial=4, edges=[(0, 3), (1, 2)])
        _, params, depth = count_resources(build_graph_circuit(graph, augmented=True))
        assert params == 8
        assert depth > 0

    @pytest.mark.parametrize(
        ("n_spatial", "augmented", "expected", "published"),
        [(4, False, 70, 70), (4, True, 166, 150), (6, False, 153, 150), (6, True, 569, 425)],
    )
    def test_deepest_circuit_counts(self, n_spatial, augmented, expected, published):
        basis = build_basis(enumerate_graphs(n_spatial, n_spatial), augmented)
        deepest = max(count_resources(c)[0] for c in basis.circuits)
        assert deepest == expected
        assert published / 2 <= deepest <= 2 * published
