from effbasis.hamiltonian.exact import (
    exact_ground_state,
    hartree_fock_state,
    sector_indices,
)
from effbasis.hamiltonian.fermion import FermionHamiltonian
from effbasis.hamiltonian.io import (
    load_fcidump,
    load_hamiltonian,
    load_hamiltonian_json,
    load_reference_energies,
)
from effbasis.hamiltonian.jordan_wigner import jordan_wigner
from effbasis.hamiltonian.qubit import (
    PauliString,
    QubitHamiltonian,
    apply_hamiltonian,
    apply_pauli,
    number_operator,
    sz_operator,
)

__all__ = [
    "FermionHamiltonian",
    "PauliString",
    "QubitHamiltonian",
    "apply_hamiltonian",
    "apply_pauli",
    "exact_ground_state",
    "hartree_fock_state",
    "jordan_wigner",
    "load_fcidump",
    "load_hamiltonian",
    "load_hamiltonian_json",
    "load_reference_energies",
    "number_operator",
    "sector_indices",
    "sz_operator",
]
