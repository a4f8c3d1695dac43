"""
Experiment service — runs every RunSpec of an experiment document against
every fixture and collects one report row per (system, run).

Runs are isolated: a failing run is logged and recorded in the report's
failure list while the remaining runs proceed. Scan points may run in worker
processes; rows always come back in (system, run) order.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
from structlog import get_logger

from effbasis.core.errors import GraphError, VariationalBoundError
from effbasis.graphs.circuits import build_basis
from effbasis.graphs.enumeration import enumerate_graphs, parse_graph
from effbasis.graphs.resources import count_resources
from effbasis.hamiltonian.exact import exact_ground_state
from effbasis.hamiltonian.io import load_hamiltonian, load_reference_energies
from effbasis.hamiltonian.jordan_wigner import jordan_wigner
from effbasis.hamiltonian.qubit import QubitHamiltonian
from effbasis.krylov.basis import krylov_energy
from effbasis.models.experiment import ExperimentConfig, RunSpec
from effbasis.models.graph import BasisSpec, MolecularGraph
from effbasis.models.report import (
    ExperimentReport,
    ReportRow,
    ResourceRow,
    RunDetail,
    RunFailure,
)
from effbasis.optimize.gnm import gnm_solve
from effbasis.optimize.preopt import PreOptimization, rank_graphs

logger = get_logger()

# Slack on the variational bound against the stored FCI energy
VARIATIONAL_SLACK = 1e-9
FLOAT_FORMAT = "%.12f"


@dataclass
class System:
    name: str
    path: Path
    qh: QubitHamiltonian
    n_spatial: int
    n_electrons: int
    ms2: int
    fci_energy: float


@dataclass
class SystemOutcome:
    rows: list[ReportRow]
    details: list[RunDetail]
    failures: list[RunFailure]


def load_system(path: Path, config: ExperimentConfig) -> System:
    """Fixture → qubit Hamiltonian plus the FCI reference energy.

    The stored reference is used when present; otherwise FCI is recomputed
    and a warning is logged.
    """
    fh = load_hamiltonian(path)
    n_electrons = config.n_electrons if config.n_electrons is not None else fh.n_electrons
    ms2 = config.ms2 if config.ms2 is not None else fh.ms2
    qh = jordan_wigner(fh)

    references = load_reference_energies(config.fixture_dir or path.parent)
    record = references.get(path.name)
    if record is not None and record.n_electrons == n_electrons and record.ms2 == ms2:
        fci_energy = record.fci_energy
    else:
        logger.warning("reference_energy_missing", fixture=path.name, action="recomputing FCI")
        fci_energy, _ = exact_ground_state(qh, n_electrons, ms2)

    return System(
        name=path.stem,
        path=path,
        qh=qh,
        n_spatial=fh.n_spatial,
        n_electrons=n_electrons,
        ms2=ms2,
        fci_energy=fci_energy,
    )


def candidate_graphs(run: RunSpec, n_spatial: int, n_electrons: int) -> list[MolecularGraph]:
    if run.graphs == "enumerate":
        return enumerate_graphs(n_spatial, n_electrons)
    graphs = [parse_graph(edges, n_spatial) for edges in run.graphs]
    for graph in graphs:
        if graph.n_electrons != n_electrons:
            raise GraphError(
                f"graph {graph.label} holds {graph.n_electrons} electrons, system has {n_electrons}"
            )
    return graphs


def select_basis(
    run: RunSpec, system: System
) -> tuple[BasisSpec, list[PreOptimization] | None]:
    """The N graphs a G(N,M) run uses, with their pre-optimizations when ranked."""
    graphs = candidate_graphs(run, system.n_spatial, system.n_electrons)
    if run.N > len(graphs):
        raise GraphError(f"N={run.N} exceeds the {len(graphs)} available graphs")
    if run.ordering == "given":
        return build_basis(graphs[: run.N], run.augmented), None
    ranked = rank_graphs(graphs, system.qh, run.augmented, run.optimizer)[: run.N]
    return build_basis([g for g, _ in ranked], run.augmented), [p for _, p in ranked]


def deepest_circuit(basis: BasisSpec) -> tuple[str, tuple[int, int, int]]:
    """Label and (cnot, parameters, depth) of the circuit with most CNOTs."""
    counted = [(count_resources(c), label) for c, label in zip(basis.circuits, basis.labels)]
    resources, label = max(counted, key=lambda item: (item[0][0], item[0][2]))
    return label, resources


def _check_bound(energy: float, system: System) -> None:
    if energy < system.fci_energy - VARIATIONAL_SLACK:
        raise VariationalBoundError(
            f"energy {energy:.12f} lies below FCI {system.fci_energy:.12f} for {system.name}"
        )


def execute_run(run: RunSpec, system: System) -> tuple[ReportRow, RunDetail]:
    label = run.label or f"{run.method}({run.N},{run.M})"
    base = {
        "system": system.name,
        "method": run.method,
        "N": run.N,
        "M": run.M if run.method == "GNM" else 0,
        "augmented": run.augmented if run.method == "GNM" else False,
    }

    match run.method:
        case "FCI":
            row = ReportRow(
                **base,
                energy=system.fci_energy,
                fci_energy=system.fci_energy,
                error=0.0,
                retained_rank=1,
            )
            detail = RunDetail(
                **base, label=label, energy=system.fci_energy, fci_energy=system.fci_energy
            )

        case "GNM":
            basis, pre = select_basis(run, system)
            result = gnm_solve(basis, system.qh, run.gnm_config(), pre=pre)
            _, (cnots, params, depth) = deepest_circuit(basis)
            row = ReportRow(
                **base,
                graphs=";".join(result.labels),
                energy=result.energy,
                fci_energy=system.fci_energy,
                error=result.energy - system.fci_energy,
                iterations=result.iterations,
                restarts=result.restarts,
                converged=result.converged,
                retained_rank=result.eig.retained_rank,
                condition_number=result.eig.condition_number,
                min_overlap_eigenvalue=result.eig.min_overlap_eigenvalue,
                cnot_count=cnots,
                parameter_count=params,
                depth=depth,
            )
            detail = RunDetail(
                **base,
                label=label,
                graphs=result.labels,
                energy=result.energy,
                fci_energy=system.fci_energy,
                static_energy=result.static_energy,
                coefficients=[float(c) for c in np.real(result.coefficients)],
                bindings=result.bindings,
                history=result.history,
                discarded_overlap_eigenvalues=result.eig.discarded_overlap_eigenvalues,
                warnings=result.warnings,
            )

        case "KRYLOV":
            cfg = run.krylov.model_copy(update={"N": run.N})
            eig = krylov_energy(
                system.qh,
                cfg,
                system.n_electrons,
                system.ms2,
                run.optimizer.overlap_threshold,
            )
            row = ReportRow(
                **base,
                graphs=cfg.mode,
                energy=eig.ground_energy,
                fci_energy=system.fci_energy,
                error=eig.ground_energy - system.fci_energy,
                retained_rank=eig.retained_rank,
                condition_number=eig.condition_number,
                min_overlap_eigenvalue=eig.min_overlap_eigenvalue,
            )
            detail = RunDetail(
                **base,
                label=label,
                energy=eig.ground_energy,
                fci_energy=system.fci_energy,
                discarded_overlap_eigenvalues=eig.discarded_overlap_eigenvalues,
            )

    _check_bound(row.energy, system)
    logger.info(
        "run_complete",
        system=system.name,
        run=label,
        energy=row.energy,
        error=row.error,
    )
    return row, detail


def run_system(path: Path, config: ExperimentConfig) -> SystemOutcome:
    """All runs of the experiment on one fixture, each run isolated."""
    outcome = SystemOutcome(rows=[], details=[], failures=[])
    try:
        system = load_system(path, config)
    except Exception as e:
        logger.exception("system_load_failed", fixture=str(path))
        outcome.failures.append(RunFailure(system=path.stem, label="*", error=str(e)))
        return outcome

    for run in config.runs:
        label = run.label or f"{run.method}({run.N},{run.M})"
        try:
            row, detail = execute_run(run, system)
        except Exception as e:
            logger.exception("run_failed", system=system.name, run=label)
            outcome.failures.append(RunFailure(system=system.name, label=label, error=str(e)))
            continue
        outcome.rows.append(row)
        outcome.details.append(detail)
    return outcome


def run_experiment(config: ExperimentConfig, jobs: int | None = None) -> ExperimentReport:
    """Execute every run on every system; systems fan out over `jobs` processes."""
    jobs = jobs or config.jobs
    systems = config.systems
    logger.info("experiment_start", name=config.name, systems=len(systems), runs=len(config.runs), jobs=jobs)

    if jobs > 1 and len(systems) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(systems))) as executor:
            futures = [executor.submit(run_system, path, config) for path in systems]
            outcomes = [f.result() for f in futures]
    else:
        outcomes = [run_system(path, config) for path in systems]

    report = ExperimentReport(name=config.name)
    for outcome in outcomes:
        report.rows.extend(outcome.rows)
        report.details.extend(outcome.details)
        report.failures.extend(outcome.failures)

    logger.info(
        "experiment_complete",
        name=config.name,
        rows=len(report.rows),
        failures=len(report.failures),
    )
    return report


def write_report(report: ExperimentReport, output: Path) -> tuple[Path, Path]:
    """<output>/<name>.csv and the <output>/<name>.json sidecar."""
    output.mkdir(parents=True, exist_ok=True)
    csv_path = output / f"{report.name}.csv"
    json_path = output / f"{report.name}.json"
    frame = pd.DataFrame(
        [row.model_dump() for row in report.rows],
        columns=list(ReportRow.model_fields),
    )
    frame.to_csv(csv_path, index=False, float_format=FLOAT_FORMAT)
    json_path.write_text(report.model_dump_json(indent=2) + "\n")
    logger.info("report_written", csv=str(csv_path), json=str(json_path))
    return csv_path, json_path


def report_resources(config: ExperimentConfig) -> list[ResourceRow]:
    """Deepest-circuit CNOT, parameter and depth counts for every GNM run.

    No optimization is done: energy-ordered runs are counted over all
    candidate graphs, given-order runs over their first N graphs.
    """
    rows = []
    for path in config.systems:
        fh = load_hamiltonian(path)
        n_electrons = config.n_electrons if config.n_electrons is not None else fh.n_electrons
        for run in config.runs:
            if run.method != "GNM":
                continue
            graphs = candidate_graphs(run, fh.n_spatial, n_electrons)
            if run.ordering == "given":
                graphs = graphs[: run.N]
            label, (cnots, params, depth) = deepest_circuit(build_basis(graphs, run.augmented))
            rows.append(
                ResourceRow(
                    system=path.stem,
                    method=f"G(N,M){'+U_R' if run.augmented else ''}",
                    N=run.N,
                    augmented=run.augmented,
                    graph=label,
                    cnot_count=cnots,
                    parameter_count=params,
                    depth=depth,
                )
            )
            logger.info("resources_counted", system=path.stem, graph=label, cnot_count=cnots)
    return rows


def write_resources(name: str, rows: list[ResourceRow], output: Path) -> Path:
    output.mkdir(parents=True, exist_ok=True)
    path = output / f"{name}.resources.csv"
    pd.DataFrame(
        [row.model_dump() for row in rows], columns=list(ResourceRow.model_fields)
    ).to_csv(path, index=False)
    return path
