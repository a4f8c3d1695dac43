"""Shared builders and dense-matrix oracles for the test suite."""

from functools import reduce
from pathlib import Path

import numpy as np
import pytest

from effbasis.hamiltonian.fermion import FermionHamiltonian
from effbasis.hamiltonian.qubit import PauliString, QubitHamiltonian

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"
H2_FIXTURE = FIXTURE_DIR / "h2_sto3g_r1.4bohr.fcidump"
H2_FCI = -1.1372852150651873

_PAULI = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


def pauli_matrix(pauli: PauliString | str, n_qubits: int) -> np.ndarray:
    """Dense matrix with qubit 0 as the least significant index bit."""
    if isinstance(pauli, str):
        pauli = PauliString.from_label(pauli)
    factors = pauli.factors
    ops = [_PAULI[factors.get(q, "I")] for q in reversed(range(n_qubits))]
    return reduce(np.kron, ops)


def dense_matrix(qh: QubitHamiltonian) -> np.ndarray:
    return sum(c * pauli_matrix(p, qh.n_qubits) for c, p in qh.terms)


def hubbard_ring(n_sites: int = 4, t: float = 1.0, u: float = 4.0) -> FermionHamiltonian:
    """Half-filled Hubbard ring in the site basis."""
    h = np.zeros((n_sites, n_sites))
    for i in range(n_sites):
        j = (i + 1) % n_sites
        h[i, j] = h[j, i] = -t
    g = np.zeros((n_sites,) * 4)
    for i in range(n_sites):
        g[i, i, i, i] = u
    return FermionHamiltonian(n_sites, 0.0, h, g, n_electrons=n_sites, ms2=0)


def random_qubit_hamiltonian(n_qubits: int, n_terms: int, seed: int = 7) -> QubitHamiltonian:
    rng = np.random.default_rng(seed)
    full = (1 << n_qubits) - 1
    terms = [
        (float(rng.normal()), PauliString(int(rng.integers(0, full + 1)), int(rng.integers(0, full + 1))))
        for _ in range(n_terms)
    ]
    return QubitHamiltonian(n_qubits, tuple(terms))


def require_fixture(name: str) -> Path:
    path = FIXTURE_DIR / name
    if not path.exists():
        pytest.fail(f"fixture {name} is missing from {FIXTURE_DIR}")
    return path
