"""
G(N,M): N graph circuits combined linearly, the first M of them optimized
together with the coefficients.

Pipeline per solve:
  1. pre-optimize every circuit on its own (skipped when supplied)
  2. solve H c = λ S c at the pre-optimized angles → G(N,0) energy, c⁰
  3. M ≥ 1: BFGS on the Rayleigh quotient over c and the first M circuits
  4. re-solve H c = λ S c at the final angles; if those coefficients and
     the optimized ones differ by more than `disagreement_tol` in the
     S-norm, restart step 3 from the re-solved coefficients

Steps 3-4 run from `n_starts` starting points: the pre-optimized angles and
seeded Gaussian perturbations of them. A pre-optimized start that is already
stationary, or whose overlap matrix has lost rank, is replaced by a perturbed
one. The lowest energy wins; ties keep the earlier start.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from structlog import get_logger

from effbasis.core.errors import DimensionError
from effbasis.effective.solver import (
    EffectiveProblem,
    GeneralizedEigResult,
    solve_generalized,
)
from effbasis.hamiltonian.qubit import QubitHamiltonian
from effbasis.models.experiment import GNMConfig, OptimizerSettings
from effbasis.models.graph import BasisSpec
from effbasis.optimize.objective import BasisEvaluator
from effbasis.optimize.preopt import PreOptimization, pre_optimize

logger = get_logger()

TIE_TOLERANCE = 1e-10


@dataclass
class GNMResult:
    energy: float
    coefficients: np.ndarray
    bindings: list[dict[str, float]]
    iterations: int
    restarts: int
    static_energy: float
    eig: GeneralizedEigResult
    labels: list[str]
    N: int
    M: int
    augmented: bool = False
    converged: bool = True
    history: list[float] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    starts: int = 1


def _coefficient_distance(c: np.ndarray, reference: np.ndarray, smat: np.ndarray) -> float:
    """S-norm distance between two S-normalized vectors after sign alignment."""
    c = c / np.sqrt(c @ smat @ c)
    if reference @ smat @ c < 0:
        c = -c
    diff = c - reference
    return float(np.sqrt(max(diff @ smat @ diff, 0.0)))


def _solve_at(evaluator: BasisEvaluator, threshold: float) -> GeneralizedEigResult:
    hmat, smat = evaluator.matrices()
    return solve_generalized(EffectiveProblem(hmat, smat, evaluator.basis.labels), threshold)


@dataclass
class _StartOutcome:
    energy: float
    eig: GeneralizedEigResult
    angles: np.ndarray
    iterations: int
    restarts: int
    history: list[float]
    warnings: list[str]


def _stationary_start(evaluator: BasisEvaluator, eig: GeneralizedEigResult, cfg: GNMConfig) -> bool:
    """Lost overlap rank, or a vanishing gradient of the combined objective.

    A single circuit's pre-optimized point is its concerted optimum already.
    """
    if evaluator.size == 1:
        return False
    if eig.retained_rank < evaluator.size:
        return True
    x = np.concatenate([eig.coefficients, evaluator.angles()])
    _, grad = evaluator.value_and_gradient(x, cfg.fd_step)
    return float(np.max(np.abs(grad))) <= cfg.gtol


def _concerted(evaluator: BasisEvaluator, c: np.ndarray, cfg: GNMConfig, log) -> _StartOutcome:
    """BFGS over [c, θ] from the evaluator's current angles, restarting on disagreement."""
    history: list[float] = []
    iterations = 0
    restarts = 0
    optimizer_ok = True
    agreed = False

    def _record(intermediate_result) -> None:
        history.append(float(intermediate_result.fun))
        log.debug("gnm_iteration", iteration=len(history), energy=history[-1])

    while True:
        x0 = np.concatenate([c, evaluator.angles()])
        res = minimize(
            lambda x: evaluator.value_and_gradient(x, cfg.fd_step),
            x0,
            jac=True,
            method="BFGS",
            callback=_record,
            options={"gtol": cfg.gtol, "maxiter": cfg.maxiter},
        )
        iterations += int(res.nit)
        grad_norm = float(np.max(np.abs(res.jac))) if res.jac is not None else 0.0
        if not res.success and grad_norm > cfg.gtol:
            optimizer_ok = False
            log.warning("gnm_optimizer_stopped", message=str(res.message), gradient_norm=grad_norm)

        evaluator.set_angles(res.x[cfg.N :])
        c_opt = res.x[: cfg.N]
        eig = _solve_at(evaluator, cfg.overlap_threshold)
        _, smat = evaluator.matrices()
        distance = _coefficient_distance(c_opt, eig.coefficients, smat)
        if distance <= cfg.disagreement_tol:
            agreed = True
            break
        if restarts >= cfg.max_restarts:
            break
        restarts += 1
        log.info("gnm_restart", restart=restarts, disagreement=distance)
        c = eig.coefficients.copy()

    warnings = []
    if not optimizer_ok:
        warnings.append("BFGS stopped before reaching the gradient tolerance")
    if not agreed:
        warnings.append(f"coefficients still disagree after {restarts} restarts")
        log.warning("gnm_restart_limit", restarts=restarts)
    return _StartOutcome(
        energy=eig.ground_energy,
        eig=eig,
        angles=evaluator.angles(),
        iterations=iterations,
        restarts=restarts,
        history=history,
        warnings=warnings,
    )


def gnm_solve(
    basis: BasisSpec,
    qh: QubitHamiltonian,
    cfg: GNMConfig,
    pre: Sequence[PreOptimization] | None = None,
    initial: "GNMResult | None" = None,
) -> GNMResult:
    """Run G(N,M) on a basis of exactly N circuits.

    `pre` supplies already pre-optimized circuits (e.g. from graph ranking).
    `initial` continues from an earlier result's angles and coefficients.
    Non-convergence and an exhausted restart budget are reported through
    `converged=False` and `warnings`, not raised.
    """
    if len(basis) != cfg.N:
        raise DimensionError(f"basis has {len(basis)} circuits, config asks for N={cfg.N}")
    log = logger.bind(graphs=basis.labels, N=cfg.N, M=cfg.M, augmented=basis.augmented)
    warnings: list[str] = []

    if initial is not None:
        bindings = [dict(b) for b in initial.bindings]
    else:
        if pre is None:
            pre = [pre_optimize(c, qh, settings=cfg) for c in basis.circuits]
        if len(pre) != len(basis):
            raise DimensionError(f"{len(pre)} pre-optimizations for {len(basis)} circuits")
        bindings = [dict(p.binding) for p in pre]
        warnings.extend(w for p in pre for w in p.warnings)

    evaluator = BasisEvaluator(basis, qh, bindings, cfg.M)
    eig = _solve_at(evaluator, cfg.overlap_threshold)
    static_energy = initial.static_energy if initial is not None else eig.ground_energy
    c = initial.coefficients.copy() if initial is not None else eig.coefficients.copy()
    log.info("gnm_static_solution", energy=eig.ground_energy, rank=eig.retained_rank)

    if cfg.M == 0:
        return GNMResult(
            energy=eig.ground_energy,
            coefficients=eig.coefficients,
            bindings=evaluator.bindings,
            iterations=0,
            restarts=0,
            static_energy=static_energy,
            eig=eig,
            labels=basis.labels,
            N=cfg.N,
            M=0,
            augmented=basis.augmented,
            converged=not warnings,
            warnings=warnings,
        )

    rng = np.random.default_rng(cfg.seed)
    base = evaluator.angles()
    reseed = initial is None and _stationary_start(evaluator, eig, cfg)
    if reseed:
        log.info("gnm_stationary_start", retained_rank=eig.retained_rank)
    n_starts = 1 if initial is not None else cfg.n_starts

    best: _StartOutcome | None = None
    for start in range(n_starts):
        if start > 0 or reseed:
            evaluator.set_angles(base + rng.normal(scale=cfg.perturbation, size=base.size))
            c = _solve_at(evaluator, cfg.overlap_threshold).coefficients.copy()
        else:
            evaluator.set_angles(base)
        outcome = _concerted(evaluator, c, cfg, log.bind(start=start))
        log.info(
            "gnm_start_done",
            start=start,
            energy=outcome.energy,
            iterations=outcome.iterations,
        )
        if best is None or outcome.energy < best.energy - TIE_TOLERANCE:
            best = outcome
    evaluator.set_angles(best.angles)
    warnings.extend(best.warnings)

    log.info(
        "gnm_done",
        energy=best.energy,
        static_energy=static_energy,
        iterations=best.iterations,
        restarts=best.restarts,
        starts=n_starts,
    )
    return GNMResult(
        energy=best.energy,
        coefficients=best.eig.coefficients,
        bindings=evaluator.bindings,
        iterations=best.iterations,
        restarts=best.restarts,
        static_energy=static_energy,
        eig=best.eig,
        labels=basis.labels,
        N=cfg.N,
        M=cfg.M,
        augmented=basis.augmented,
        converged=not warnings,
        history=best.history,
        warnings=warnings,
        starts=n_starts,
    )


def gnm_hierarchy(
    basis: BasisSpec,
    qh: QubitHamiltonian,
    n: int,
    settings: OptimizerSettings | None = None,
    pre: Sequence[PreOptimization] | None = None,
) -> list[GNMResult]:
    """G(n,0) … G(n,n) on the first n circuits, sharing one pre-optimization."""
    settings = settings or OptimizerSettings()
    if not 1 <= n <= len(basis):
        raise DimensionError(f"n={n} outside 1..{len(basis)}")
    sub = basis.truncated(n)
    if pre is None:
        pre = [pre_optimize(c, qh, settings=settings) for c in sub.circuits]
    pre = list(pre)[:n]
    shared = settings.model_dump(include=set(OptimizerSettings.model_fields))
    results = []
    for m in range(n + 1):
        cfg = GNMConfig(N=n, M=m, augmented=basis.augmented, **shared)
        results.append(gnm_solve(sub, qh, cfg, pre=pre))
    return results
