"""
Report models: the CSV rows (energies in Hartree) and the JSON sidecar that
keeps every optimized parameter for reproducibility.
"""

from pydantic import BaseModel, Field


class ReportRow(BaseModel):
    """One CSV row; field order is the column order."""

    system: str
    method: str
    N: int
    M: int
    augmented: bool
    graphs: str = ""
    energy: float
    fci_energy: float
    error: float
    iterations: int = 0
    restarts: int = 0
    converged: bool = True
    retained_rank: int = 0
    condition_number: float = 1.0
    min_overlap_eigenvalue: float = 1.0
    cnot_count: int = 0
    parameter_count: int = 0
    depth: int = 0


class RunDetail(BaseModel):
    system: str
    label: str
    method: str
    N: int
    M: int
    augmented: bool
    graphs: list[str] = Field(default_factory=list)
    energy: float
    fci_energy: float
    static_energy: float | None = None
    coefficients: list[float] = Field(default_factory=list)
    bindings: list[dict[str, float]] = Field(default_factory=list)
    history: list[float] = Field(default_factory=list)
    discarded_overlap_eigenvalues: list[float] = Field(default_factory=list)
    warnings: list[str] = Field(default_factory=list)


class ResourceRow(BaseModel):
    system: str
    method: str
    N: int
    augmented: bool
    graph: str
    cnot_count: int
    parameter_count: int
    depth: int


class RunFailure(BaseModel):
    system: str
    label: str
    error: str


class ExperimentReport(BaseModel):
    name: str
    rows: list[ReportRow] = Field(default_factory=list)
    details: list[RunDetail] = Field(default_factory=list)
    failures: list[RunFailure] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures
