"""
Exact Krylov-type effective bases: normalized powers H^k|ψ₀⟩ or real-time
evolved states exp(−i k Δt H)|ψ₀⟩, without Trotter error.
"""

import math

import numpy as np
from structlog import get_logger

from effbasis.core.errors import DimensionError, KrylovError
from effbasis.effective.solver import (
    EffectiveProblem,
    GeneralizedEigResult,
    solve_generalized,
)
from effbasis.hamiltonian.exact import default_ms2, hartree_fock_state
from effbasis.hamiltonian.qubit import QubitHamiltonian
from effbasis.models.experiment import KrylovConfig
from effbasis.models.state import StateVector, bitstring_to_index
from effbasis.simulator.statevector import transition_elements

logger = get_logger()

TAYLOR_TOLERANCE = 1e-12
MAX_TAYLOR_TERMS = 200
ZERO_NORM = 1e-14


def _electron_counts(bits: str) -> tuple[int, int]:
    return bits[0::2].count("1"), bits[1::2].count("1")


def reference_states(
    qh: QubitHamiltonian,
    cfg: KrylovConfig,
    n_electrons: int | None = None,
    ms2: int | None = None,
) -> list[StateVector]:
    """Reference determinants; the Hartree-Fock one when none are configured.

    Raises:
        KrylovError: a reference has the wrong length or lies outside the
            (n_electrons, ms2) sector, or no reference can be chosen.
    """
    if not cfg.references:
        if n_electrons is None:
            raise KrylovError("no references configured and no electron count to pick one")
        return [hartree_fock_state(qh, n_electrons, ms2)]

    refs = []
    for bits in cfg.references:
        if len(bits) != qh.n_qubits:
            raise KrylovError(f"reference '{bits}' does not have {qh.n_qubits} qubits")
        if n_electrons is not None:
            target_ms2 = default_ms2(n_electrons) if ms2 is None else ms2
            up, down = _electron_counts(bits)
            if up + down != n_electrons or up - down != target_ms2:
                raise KrylovError(
                    f"reference '{bits}' is outside the sector "
                    f"n_electrons={n_electrons}, ms2={target_ms2}"
                )
        refs.append(StateVector.basis_state(qh.n_qubits, bitstring_to_index(bits)))
    return refs


def power_step(qh: QubitHamiltonian, amps: np.ndarray) -> np.ndarray:
    """H v / ‖H v‖."""
    out = qh.apply(amps)
    norm = np.linalg.norm(out)
    if norm < ZERO_NORM:
        raise KrylovError("reference annihilated by H (zero Krylov vector)")
    return out / norm


def time_step(qh: QubitHamiltonian, amps: np.ndarray, dt: float) -> np.ndarray:
    """exp(−i dt H) v by a Taylor series, sub-stepped so each step has τ·Σ|c| ≤ 1."""
    n_sub = max(1, math.ceil(dt * qh.one_norm()))
    tau = dt / n_sub
    out = np.asarray(amps, dtype=np.complex128)
    for _ in range(n_sub):
        term = out
        total = out.copy()
        for j in range(1, MAX_TAYLOR_TERMS + 1):
            term = (-1j * tau / j) * qh.apply(term)
            total += term
            if np.linalg.norm(term) < TAYLOR_TOLERANCE:
                break
        else:
            raise KrylovError(f"Taylor series did not converge in {MAX_TAYLOR_TERMS} terms")
        out = total
    return out


def krylov_basis(
    qh: QubitHamiltonian,
    cfg: KrylovConfig,
    n_electrons: int | None = None,
    ms2: int | None = None,
) -> list[StateVector]:
    """N basis vectors, round-robin over references.

    Every reference contributes its k-th vector before any contributes its
    (k+1)-th; the list is cut at N.
    """
    refs = reference_states(qh, cfg, n_electrons, ms2)
    current = [r.amplitudes.copy() for r in refs]
    basis: list[StateVector] = []
    while True:
        for i, amps in enumerate(current):
            basis.append(StateVector(qh.n_qubits, amps))
            if len(basis) == cfg.N:
                logger.debug("krylov_basis_built", mode=cfg.mode, N=cfg.N, references=len(refs))
                return basis
            if cfg.mode == "POWER":
                current[i] = power_step(qh, amps)
            else:
                current[i] = time_step(qh, amps, cfg.dt)


def krylov_energy(
    qh: QubitHamiltonian,
    cfg: KrylovConfig,
    n_electrons: int | None = None,
    ms2: int | None = None,
    threshold: float | None = None,
) -> GeneralizedEigResult:
    """Ground energy of the Krylov basis; REALTIME gives complex Hermitian H and S."""
    vectors = krylov_basis(qh, cfg, n_electrons, ms2)
    if any(v.n_qubits != qh.n_qubits for v in vectors):
        raise DimensionError("Krylov vectors do not match the Hamiltonian register")
    hmat, smat = transition_elements(qh, vectors, allow_complex=cfg.mode == "REALTIME")
    labels = [f"k{i}" for i in range(len(vectors))]
    result = solve_generalized(EffectiveProblem(hmat, smat, labels), threshold)
    logger.info(
        "krylov_energy",
        mode=cfg.mode,
        N=cfg.N,
        energy=result.ground_energy,
        retained_rank=result.retained_rank,
    )
    return result
