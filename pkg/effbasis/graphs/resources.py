"""
Gate counting on a fixed compilation into {X, H, RX, RY, RZ, CNOT}.

  CRY(θ)           RY(θ/2)·CNOT·RY(−θ/2)·CNOT on the target  → 2 CNOT
  PAULI_ROT, k > 1 basis change, CNOT ladder, RZ, ladder back   → 2(k−1) CNOT
"""

from typing import NamedTuple

from effbasis.models.circuit import Circuit, Gate


class Primitive(NamedTuple):
    kind: str
    qubits: tuple[int, ...]


_BASIS_CHANGE = {"X": "H", "Y": "RX"}


def _compile_pauli_rotation(gate: Gate) -> list[Primitive]:
    tokens = gate.pauli.split()
    support = [int(t[1:]) for t in tokens]
    basis = [
        Primitive(_BASIS_CHANGE[t[0]], (q,)) for t, q in zip(tokens, support) if t[0] in _BASIS_CHANGE
    ]
    ordered = sorted(support)
    ladder = [Primitive("CNOT", (a, b)) for a, b in zip(ordered, ordered[1:])]
    return [
        *basis,
        *ladder,
        Primitive("RZ", (ordered[-1],)),
        *reversed(ladder),
        *basis,
    ]


def compile_gate(gate: Gate) -> list[Primitive]:
    match gate.kind:
        case "X" | "RY" | "CNOT":
            return [Primitive(gate.kind, gate.qubits)]
        case "CRY":
            control, target = gate.qubits
            return [
                Primitive("RY", (target,)),
                Primitive("CNOT", (control, target)),
                Primitive("RY", (target,)),
                Primitive("CNOT", (control, target)),
            ]
        case "PAULI_ROT":
            return _compile_pauli_rotation(gate)
    raise ValueError(f"unknown gate kind {gate.kind}")


def count_resources(circuit: Circuit) -> tuple[int, int, int]:
    """(CNOT count, parameter count, depth) after compilation.

    Depth is the number of layers when every primitive is scheduled as early
    as its qubits allow.
    """
    cnots = 0
    level = [0] * circuit.n_qubits
    for gate in circuit.gates:
        for prim in compile_gate(gate):
            if prim.kind == "CNOT":
                cnots += 1
            layer = max(level[q] for q in prim.qubits) + 1
            for q in prim.qubits:
                level[q] = layer
    depth = max(level, default=0)
    return cnots, len(circuit.parameter_names), depth
