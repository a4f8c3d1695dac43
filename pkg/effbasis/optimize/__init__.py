from effbasis.optimize.analysis import (
    ComponentAnalysis,
    analyze_component,
    edge_states,
    pattern_projection,
    total_wavefunction,
)
from effbasis.optimize.gnm import GNMResult, gnm_hierarchy, gnm_solve
from effbasis.optimize.objective import BasisEvaluator, rayleigh_objective
from effbasis.optimize.preopt import PreOptimization, pre_optimize, rank_graphs

__all__ = [
    "BasisEvaluator",
    "ComponentAnalysis",
    "GNMResult",
    "PreOptimization",
    "analyze_component",
    "edge_states",
    "gnm_hierarchy",
    "gnm_solve",
    "pattern_projection",
    "pre_optimize",
    "rank_graphs",
    "rayleigh_objective",
    "total_wavefunction",
]
