"""
Molecular graph models — spatial orbitals as vertices, disjoint pairing edges.
"""

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from effbasis.models.circuit import Circuit

Edge = tuple[int, int]


class MolecularGraph(BaseModel):
    """One spatial orbital per vertex; edges pairwise disjoint."""

    model_config = ConfigDict(frozen=True)

    n_spatial: int = Field(..., ge=1)
    edges: tuple[Edge, ...] = ()

    @field_validator("edges", mode="before")
    @classmethod
    def _normalize(cls, edges) -> tuple[Edge, ...]:
        normalized = []
        for edge in edges:
            if len(edge) != 2:
                raise ValueError(
                    f"edge {list(edge)} must join exactly two orbitals "
                    "(multi-orbital vertices are not supported)"
                )
            p, q = (int(e) for e in edge)
            normalized.append((min(p, q), max(p, q)))
        return tuple(sorted(normalized))

    @model_validator(mode="after")
    def _check(self) -> "MolecularGraph":
        used: set[int] = set()
        for p, q in self.edges:
            if p == q:
                raise ValueError(f"edge ({p},{q}) is a self-loop")
            if q >= self.n_spatial:
                raise ValueError(f"edge ({p},{q}) exceeds n_spatial={self.n_spatial}")
            if p in used or q in used:
                raise ValueError(f"edge ({p},{q}) overlaps another edge")
            used.update((p, q))
        return self

    @property
    def label(self) -> str:
        return "|".join(f"{p}-{q}" for p, q in self.edges) or "empty"

    @property
    def n_electrons(self) -> int:
        return 2 * len(self.edges)

    def connected(self, p: int, q: int) -> bool:
        return (min(p, q), max(p, q)) in self.edges


class BasisSpec(BaseModel):
    """The effective basis: one circuit per graph, parameter names disjoint."""

    graphs: list[MolecularGraph]
    circuits: list[Circuit]
    augmented: bool = False

    @model_validator(mode="after")
    def _check(self) -> "BasisSpec":
        if len(self.graphs) != len(self.circuits):
            raise ValueError("one circuit per graph is required")
        seen: set[str] = set()
        for circuit in self.circuits:
            overlap = seen.intersection(circuit.parameters)
            if overlap:
                raise ValueError(f"parameter names shared across circuits: {sorted(overlap)}")
            seen.update(circuit.parameters)
        return self

    def __len__(self) -> int:
        return len(self.circuits)

    @property
    def labels(self) -> list[str]:
        return [g.label for g in self.graphs]

    def bindings(self) -> list[dict[str, float]]:
        """Current parameter values per circuit."""
        return [dict(c.parameters) for c in self.circuits]

    def truncated(self, n: int) -> "BasisSpec":
        return BasisSpec(
            graphs=self.graphs[:n], circuits=self.circuits[:n], augmented=self.augmented
        )
