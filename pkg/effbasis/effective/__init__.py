from effbasis.effective.eigen import symmetric_eigen
from effbasis.effective.solver import (
    EffectiveProblem,
    GeneralizedEigResult,
    solve_generalized,
)

__all__ = [
    "EffectiveProblem",
    "GeneralizedEigResult",
    "solve_generalized",
    "symmetric_eigen",
]
