"""
Parametric circuit IR — gate list plus a named parameter table.

Conventions:
  RY(θ)          = exp(−iθY/2)
  CRY(θ)         = |0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ RY(θ), qubits = (control, target)
  CNOT           qubits = (control, target)
  PAULI_ROT(P,θ) = exp(−i(θ/2)·multiplier·P), P given as a label "X0 Z1 Y2"

The bound angle of a parametric gate is `multiplier · parameters[param]`, or
`multiplier · value` for a fixed gate. X gates may only appear in the leading
preparation prefix of `prefix_length` gates.
"""

from collections.abc import Iterable
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

GateKind = Literal["X", "CNOT", "RY", "CRY", "PAULI_ROT"]

_ARITY = {"X": 1, "RY": 1, "CNOT": 2, "CRY": 2}
_PARAMETRIC = {"RY", "CRY", "PAULI_ROT"}


def pauli_label_support(label: str) -> tuple[int, ...]:
    """Qubits acted on by a Pauli label such as 'X0 Z1 Y2'."""
    qubits = []
    for token in label.split():
        op, index = token[0], token[1:]
        if op not in "XYZ" or not index.isdigit():
            raise ValueError(f"Malformed Pauli token '{token}' in '{label}'")
        qubits.append(int(index))
    return tuple(qubits)


class Gate(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: GateKind
    qubits: tuple[int, ...]
    param: str | None = None
    value: float | None = None
    multiplier: float = 1.0
    pauli: str | None = None

    @model_validator(mode="after")
    def _check(self) -> "Gate":
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} gate repeats a qubit: {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"{self.kind} gate has a negative qubit index")

        if self.kind == "PAULI_ROT":
            if not self.pauli:
                raise ValueError("PAULI_ROT requires a Pauli label")
            if tuple(sorted(pauli_label_support(self.pauli))) != tuple(
                sorted(self.qubits)
            ):
                raise ValueError(
                    f"PAULI_ROT qubits {self.qubits} do not match label '{self.pauli}'"
                )
        elif len(self.qubits) != _ARITY[self.kind]:
            raise ValueError(
                f"{self.kind} acts on {_ARITY[self.kind]} qubit(s), got {self.qubits}"
            )

        if self.kind in _PARAMETRIC:
            if (self.param is None) == (self.value is None):
                raise ValueError(f"{self.kind} needs exactly one of 'param' or 'value'")
        elif self.param is not None or self.value is not None:
            raise ValueError(f"{self.kind} takes no angle")
        return self

    def angle(self, binding: dict[str, float]) -> float:
        """Bound rotation angle (multiplier already applied)."""
        if self.param is not None:
            return self.multiplier * binding[self.param]
        return self.multiplier * float(self.value or 0.0)


class Circuit(BaseModel):
    n_qubits: int = Field(..., ge=1)
    gates: list[Gate] = Field(default_factory=list)
    parameters: dict[str, float] = Field(
        default_factory=dict, description="Current parameter values in radians"
    )
    prefix_length: int = Field(default=0, ge=0)
    number_conserving: bool = True

    @model_validator(mode="after")
    def _check(self) -> "Circuit":
        if self.prefix_length > len(self.gates):
            raise ValueError("prefix_length exceeds the gate count")
        for i, gate in enumerate(self.gates):
            if any(q >= self.n_qubits for q in gate.qubits):
                raise ValueError(
                    f"gate {i} ({gate.kind}) addresses qubit >= n_qubits={self.n_qubits}"
                )
            if gate.param is not None and gate.param not in self.parameters:
                raise ValueError(f"gate {i} references unknown parameter '{gate.param}'")
            in_prefix = i < self.prefix_length
            if in_prefix and gate.kind != "X":
                raise ValueError(f"gate {i} in the preparation prefix is not an X gate")
            if self.number_conserving and not in_prefix and gate.kind == "X":
                raise ValueError(f"X gate at position {i} lies outside the preparation prefix")
        return self

    @property
    def parameter_names(self) -> list[str]:
        """Parameter names in order of first use."""
        seen: dict[str, None] = {}
        for gate in self.gates:
            if gate.param is not None:
                seen.setdefault(gate.param)
        return list(seen)

    def bind(self, values: dict[str, float]) -> "Circuit":
        """Copy with updated parameter values (unknown names are ignored)."""
        params = {k: float(values.get(k, v)) for k, v in self.parameters.items()}
        return self.model_copy(update={"parameters": params})

    @classmethod
    def compose(cls, n_qubits: int, fragments: Iterable["Circuit"]) -> "Circuit":
        """Tensor/sequence fragments: all prefixes first, then all bodies in order."""
        fragments = list(fragments)
        prefix: list[Gate] = []
        body: list[Gate] = []
        params: dict[str, float] = {}
        for frag in fragments:
            prefix.extend(frag.gates[: frag.prefix_length])
            body.extend(frag.gates[frag.prefix_length :])
            for name, value in frag.parameters.items():
                if name in params:
                    raise ValueError(f"parameter '{name}' defined by two fragments")
                params[name] = value
        return cls(
            n_qubits=n_qubits,
            gates=prefix + body,
            parameters=params,
            prefix_length=len(prefix),
            number_conserving=all(f.number_conserving for f in fragments),
        )
