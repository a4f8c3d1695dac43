from effbasis.graphs.circuits import (
    build_basis,
    build_edge_circuit,
    build_graph_circuit,
    orbital_rotation,
)
from effbasis.graphs.enumeration import enumerate_graphs, parse_graph
from effbasis.graphs.resources import compile_gate, count_resources

__all__ = [
    "build_basis",
    "build_edge_circuit",
    "build_graph_circuit",
    "compile_gate",
    "count_resources",
    "enumerate_graphs",
    "orbital_rotation",
    "parse_graph",
]
