"""
Experiment models — the declarative documents consumed by `effbasis run`
and the solver configurations derived from them.
"""

from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, model_validator

EdgeList = list[tuple[int, int]]


class OptimizerSettings(BaseModel):
    """Tolerances shared by pre-optimization and the concerted optimization."""

    gtol: float = Field(default=1e-6, gt=0, description="Gradient-norm tolerance")
    maxiter: int = Field(default=200, gt=0)
    max_restarts: int = Field(default=5, ge=0)
    fd_step: float = Field(
        default=1e-4, gt=0, description="Central finite-difference step (rad)"
    )
    disagreement_tol: float = Field(
        default=1e-6,
        gt=0,
        description="S-norm distance between optimized and generalized-eigen coefficients",
    )
    overlap_threshold: float = Field(default=1e-8, gt=0)
    pre_gtol: float = Field(default=1e-6, gt=0)
    pre_maxiter: int = Field(default=200, gt=0)
    n_starts: int = Field(
        default=4, ge=1, description="Concerted starts: pre-optimized angles plus perturbed copies"
    )
    perturbation: float = Field(
        default=0.6, gt=0, description="Standard deviation (rad) of the start perturbations"
    )
    seed: int = Field(default=0, ge=0, description="Seed of the start perturbations")


class GNMConfig(OptimizerSettings):
    """G(N,M): N circuits in the basis, the first M fully optimized."""

    N: int = Field(..., ge=1)
    M: int = Field(default=0, ge=0)
    augmented: bool = False

    @model_validator(mode="after")
    def _check_m(self) -> "GNMConfig":
        if self.M > self.N:
            raise ValueError(f"M={self.M} exceeds N={self.N}")
        return self


class KrylovConfig(BaseModel):
    """Exact (non-Trotterized) Krylov basis generation."""

    mode: Literal["POWER", "REALTIME"] = "REALTIME"
    N: int = Field(default=1, ge=1)
    dt: float = Field(default=0.5, gt=0, description="Time step in atomic units")
    references: list[str] = Field(
        default_factory=list,
        description="Bitstrings, qubit 0 first; empty means the Hartree-Fock determinant",
    )

    @model_validator(mode="after")
    def _check_references(self) -> "KrylovConfig":
        for ref in self.references:
            if not ref or set(ref) - {"0", "1"}:
                raise ValueError(f"Reference '{ref}' is not a bitstring")
        return self


class RunSpec(BaseModel):
    """One row of the report: a method at a given basis size."""

    method: Literal["GNM", "KRYLOV", "FCI"]
    N: int = Field(default=1, ge=1)
    M: int = Field(default=0, ge=0)
    augmented: bool = False
    graphs: Literal["enumerate"] | list[EdgeList] = "enumerate"
    ordering: Literal["energy", "given"] = Field(
        default="energy",
        description="'energy' sorts graphs by pre-optimized energy; 'given' keeps config order",
    )
    optimizer: OptimizerSettings = Field(default_factory=OptimizerSettings)
    krylov: KrylovConfig = Field(default_factory=KrylovConfig)
    label: str = ""

    @model_validator(mode="after")
    def _check_method_fields(self) -> "RunSpec":
        if self.method == "GNM" and self.M > self.N:
            raise ValueError(f"M={self.M} exceeds N={self.N}")
        return self

    def gnm_config(self) -> GNMConfig:
        return GNMConfig(
            N=self.N,
            M=self.M,
            augmented=self.augmented,
            **self.optimizer.model_dump(),
        )


class ExperimentConfig(BaseModel):
    """A complete experiment: systems, runs and output location."""

    name: str = "experiment"
    fixture: Path | None = None
    scan: list[Path] | None = None
    fixture_dir: Path | None = Field(
        default=None,
        description="Directory holding reference.json; defaults to each fixture's folder",
    )
    n_electrons: int | None = Field(default=None, ge=0)
    ms2: int | None = None
    runs: list[RunSpec] = Field(..., min_length=1)
    output: Path = Path("results")
    jobs: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_systems(self) -> "ExperimentConfig":
        if (self.fixture is None) == (self.scan is None):
            raise ValueError("Exactly one of 'fixture' or 'scan' must be given")
        if self.scan is not None and not self.scan:
            raise ValueError("'scan' must list at least one fixture")
        return self

    @property
    def systems(self) -> list[Path]:
        return [self.fixture] if self.fixture is not None else list(self.scan or [])

    def resolve_paths(self, base: Path) -> "ExperimentConfig":
        """Make relative fixture paths relative to the config file's folder."""

        def _resolve(p: Path | None) -> Path | None:
            if p is None or p.is_absolute() or p.exists():
                return p
            return base / p

        return self.model_copy(
            update={
                "fixture": _resolve(self.fixture),
                "scan": [_resolve(p) for p in self.scan] if self.scan else self.scan,
                "fixture_dir": _resolve(self.fixture_dir),
            }
        )
