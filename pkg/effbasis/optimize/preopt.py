"""
Single-circuit energy minimization and the energy ordering of graphs built on it.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from structlog import get_logger

from effbasis.graphs.circuits import build_graph_circuit
from effbasis.hamiltonian.qubit import QubitHamiltonian
from effbasis.models.circuit import Circuit
from effbasis.models.experiment import OptimizerSettings
from effbasis.models.graph import MolecularGraph
from effbasis.simulator.statevector import expectation, simulate

logger = get_logger()

RANK_DECIMALS = 8


@dataclass
class PreOptimization:
    binding: dict[str, float]
    energy: float
    iterations: int
    converged: bool
    gradient_norm: float
    warnings: list[str] = field(default_factory=list)


def central_difference(fun, x: np.ndarray, step: float) -> np.ndarray:
    """Central finite-difference gradient of a scalar function."""
    grad = np.empty_like(x)
    for i in range(x.size):
        shift = np.zeros_like(x)
        shift[i] = step
        grad[i] = (fun(x + shift) - fun(x - shift)) / (2.0 * step)
    return grad


def pre_optimize(
    circuit: Circuit,
    qh: QubitHamiltonian,
    init: Mapping[str, float] | None = None,
    settings: OptimizerSettings | None = None,
) -> PreOptimization:
    """Minimize ⟨ψ(θ)|H|ψ(θ)⟩ over the circuit's own parameters with BFGS.

    Starts from `init` (default: the circuit's parameter table). Hitting the
    iteration cap is not an error: the best point is returned with
    `converged=False` and a warning.
    """
    settings = settings or OptimizerSettings()
    names = circuit.parameter_names
    start = dict(circuit.parameters)
    if init:
        start.update(init)

    if not names:
        energy = expectation(qh, simulate(circuit, start))
        return PreOptimization(start, energy, 0, True, 0.0)

    def energy_at(x: np.ndarray) -> float:
        return expectation(qh, simulate(circuit, dict(zip(names, x))))

    def value_and_grad(x: np.ndarray) -> tuple[float, np.ndarray]:
        return energy_at(x), central_difference(energy_at, x, settings.fd_step)

    x0 = np.array([start[n] for n in names], dtype=float)
    res = minimize(
        value_and_grad,
        x0,
        jac=True,
        method="BFGS",
        options={"gtol": settings.pre_gtol, "maxiter": settings.pre_maxiter},
    )
    grad_norm = float(np.max(np.abs(res.jac))) if res.jac is not None else 0.0
    converged = bool(res.success) or grad_norm <= settings.pre_gtol
    warnings = [] if converged else [f"pre-optimization stopped: {res.message}"]
    if warnings:
        logger.warning("pre_optimization_not_converged", message=str(res.message), gradient_norm=grad_norm)

    # 2π shifts only flip the global sign of the state
    angles = np.mod(res.x + np.pi, 2.0 * np.pi) - np.pi
    binding = {**start, **dict(zip(names, (float(v) for v in angles)))}
    return PreOptimization(
        binding=binding,
        energy=float(res.fun),
        iterations=int(res.nit),
        converged=converged,
        gradient_norm=grad_norm,
        warnings=warnings,
    )


def rank_graphs(
    graphs: Sequence[MolecularGraph],
    qh: QubitHamiltonian,
    augmented: bool = False,
    settings: OptimizerSettings | None = None,
) -> list[tuple[MolecularGraph, PreOptimization]]:
    """Pre-optimize every graph's circuit and sort by the resulting energy.

    Energies are compared after rounding to 1e-8 Ha; ties keep the input
    (canonical) order.
    """
    ranked = []
    for position, graph in enumerate(graphs):
        pre = pre_optimize(build_graph_circuit(graph, augmented), qh, settings=settings)
        logger.info(
            "graph_pre_optimized",
            graph=graph.label,
            energy=pre.energy,
            iterations=pre.iterations,
            converged=pre.converged,
        )
        ranked.append((round(pre.energy, RANK_DECIMALS), position, graph, pre))
    ranked.sort(key=lambda item: (item[0], item[1]))
    return [(graph, pre) for _, _, graph, pre in ranked]
