from effbasis.krylov.basis import krylov_basis, krylov_energy, reference_states

__all__ = ["krylov_basis", "krylov_energy", "reference_states"]
