"""
Separable-pair circuit synthesis.

Spatial orbital p lives on qubits 2p (spin up) and 2p+1 (spin down). An edge
(p, q) prepares cos(θ/2)|1100⟩ + sin(θ/2)|0011⟩ on qubits (2p, 2p+1, 2q, 2q+1)
with one RY and three CNOTs, then applies the edge orbital rotation U_R(φ).

The orbital rotation between p and q is exp(φ/2 · κ) per spin with
κ = (i/2)(X_i Z… Y_j − Y_i Z… X_j), i = 2p+σ, j = 2q+σ. The two Pauli strings
commute, so it compiles exactly into two PAULI_ROT gates per spin and keeps
real states real. At φ = 0 it is the identity.
"""

from collections.abc import Sequence
from itertools import combinations

from pydantic import ValidationError
from structlog import get_logger

from effbasis.core.errors import CircuitValidationError, GraphError
from effbasis.models.circuit import Circuit, Gate
from effbasis.models.graph import BasisSpec, MolecularGraph

logger = get_logger()


def theta_name(prefix: str, p: int, q: int) -> str:
    return f"{prefix}:theta({p},{q})"


def phi_name(prefix: str, p: int, q: int) -> str:
    return f"{prefix}:phi({p},{q})"


def ur_name(prefix: str, p: int, q: int) -> str:
    return f"{prefix}:ur({p},{q})"


def _hopping_labels(i: int, j: int) -> tuple[str, str]:
    between = " ".join(f"Z{k}" for k in range(i + 1, j))
    xy = " ".join(t for t in (f"X{i}", between, f"Y{j}") if t)
    yx = " ".join(t for t in (f"Y{i}", between, f"X{j}") if t)
    return xy, yx


def rotation_gates(p: int, q: int, param: str) -> list[Gate]:
    """Four PAULI_ROT gates of the p–q orbital rotation driven by `param`."""
    if p == q:
        raise GraphError(f"orbital rotation needs two distinct orbitals, got ({p},{q})")
    p, q = min(p, q), max(p, q)
    gates = []
    for spin in (0, 1):
        i, j = 2 * p + spin, 2 * q + spin
        xy, yx = _hopping_labels(i, j)
        support = tuple(range(i, j + 1))
        gates.append(Gate(kind="PAULI_ROT", qubits=support, param=param, multiplier=-0.5, pauli=xy))
        gates.append(Gate(kind="PAULI_ROT", qubits=support, param=param, multiplier=0.5, pauli=yx))
    return gates


def orbital_rotation(p: int, q: int, param: str, n_qubits: int, value: float = 0.0) -> Circuit:
    """Stand-alone orbital-rotation fragment (no preparation prefix)."""
    return _circuit(
        n_qubits=n_qubits,
        gates=rotation_gates(p, q, param),
        parameters={param: value},
        prefix_length=0,
    )


def build_edge_circuit(edge: Sequence[int], param_prefix: str, n_qubits: int) -> Circuit:
    """U_e = U_R(φ)·U(θ) fragment for one edge, both angles initialised to 0.

    Raises:
        GraphError: the edge does not name two distinct orbitals.
        CircuitValidationError: the edge's qubits fall outside the register.
    """
    if len(edge) != 2 or edge[0] == edge[1]:
        raise GraphError(f"edge {tuple(edge)} must join two distinct orbitals")
    p, q = min(edge), max(edge)
    a, b, c, d = 2 * p, 2 * p + 1, 2 * q, 2 * q + 1
    theta, phi = theta_name(param_prefix, p, q), phi_name(param_prefix, p, q)
    gates = [
        Gate(kind="X", qubits=(a,)),
        Gate(kind="RY", qubits=(c,), param=theta),
        Gate(kind="CNOT", qubits=(c, d)),
        Gate(kind="CNOT", qubits=(c, a)),
        Gate(kind="CNOT", qubits=(a, b)),
        *rotation_gates(p, q, phi),
    ]
    return _circuit(
        n_qubits=n_qubits,
        gates=gates,
        parameters={theta: 0.0, phi: 0.0},
        prefix_length=1,
    )


def build_graph_circuit(graph: MolecularGraph, augmented: bool = False) -> Circuit:
    """Product of edge fragments; augmentation rotations follow in pair order."""
    n_qubits = 2 * graph.n_spatial
    prefix = graph.label
    fragments = [build_edge_circuit(edge, prefix, n_qubits) for edge in graph.edges]
    if augmented:
        fragments.extend(
            orbital_rotation(p, q, ur_name(prefix, p, q), n_qubits)
            for p, q in combinations(range(graph.n_spatial), 2)
            if not graph.connected(p, q)
        )
    try:
        return Circuit.compose(n_qubits, fragments)
    except (ValidationError, ValueError) as exc:
        raise CircuitValidationError(f"cannot compose circuit for graph {prefix}: {exc}") from exc


def build_basis(graphs: Sequence[MolecularGraph], augmented: bool = False) -> BasisSpec:
    """One circuit per graph, in the given order.

    Raises:
        GraphError: empty list, mixed n_spatial or a repeated graph.
    """
    if not graphs:
        raise GraphError("a basis needs at least one graph")
    sizes = {g.n_spatial for g in graphs}
    if len(sizes) > 1:
        raise GraphError(f"graphs disagree on the number of orbitals: {sorted(sizes)}")
    labels = [g.label for g in graphs]
    repeated = sorted({lab for lab in labels if labels.count(lab) > 1})
    if repeated:
        raise GraphError(f"graphs repeated in basis: {repeated}")

    circuits = [build_graph_circuit(g, augmented) for g in graphs]
    logger.debug(
        "basis_built",
        graphs=labels,
        augmented=augmented,
        parameters=[len(c.parameters) for c in circuits],
    )
    return BasisSpec(graphs=list(graphs), circuits=circuits, augmented=augmented)


def _circuit(**fields) -> Circuit:
    try:
        return Circuit(**fields)
    except ValidationError as exc:
        messages = "; ".join(err["msg"] for err in exc.errors())
        raise CircuitValidationError(messages) from exc
