from effbasis.models.circuit import Circuit, Gate
from effbasis.models.experiment import (
    ExperimentConfig,
    GNMConfig,
    KrylovConfig,
    OptimizerSettings,
    RunSpec,
)
from effbasis.models.graph import BasisSpec, MolecularGraph
from effbasis.models.report import (
    ExperimentReport,
    ReportRow,
    ResourceRow,
    RunDetail,
    RunFailure,
)

__all__ = [
    "BasisSpec",
    "Circuit",
    "ExperimentConfig",
    "ExperimentReport",
    "GNMConfig",
    "Gate",
    "KrylovConfig",
    "MolecularGraph",
    "OptimizerSettings",
    "ReportRow",
    "ResourceRow",
    "RunDetail",
    "RunFailure",
    "RunSpec",
]
