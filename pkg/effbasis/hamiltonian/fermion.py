"""
Fermionic Hamiltonian in a spatial-orbital basis.

Two-body tensor in chemist notation, g[p,q,r,s] = (pq|rs):

    H = constant + Σ_{pq,σ} h_pq a†_{pσ} a_{qσ}
        + ½ Σ_{pqrs,στ} (pq|rs) a†_{pσ} a†_{rτ} a_{sτ} a_{qσ}
"""

from dataclasses import dataclass

import numpy as np

from effbasis.core.errors import HamiltonianValidationError

SYMMETRY_TOLERANCE = 1e-10

# (pq|rs) = (qp|rs) = (pq|sr) = (rs|pq) generate the 8-fold group.
_G_GENERATORS = ((1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1))


@dataclass(frozen=True, eq=False)
class FermionHamiltonian:
    n_spatial: int
    constant: float
    h: np.ndarray
    g: np.ndarray
    n_electrons: int | None = None
    ms2: int = 0

    def __post_init__(self) -> None:
        n = self.n_spatial
        h = np.array(self.h, dtype=np.float64)
        g = np.array(self.g, dtype=np.float64)
        if h.shape != (n, n):
            raise HamiltonianValidationError(f"h has shape {h.shape}, expected {(n, n)}")
        if g.shape != (n, n, n, n):
            raise HamiltonianValidationError(
                f"g has shape {g.shape}, expected {(n, n, n, n)}"
            )
        if not (np.isfinite(self.constant) and np.all(np.isfinite(h)) and np.all(np.isfinite(g))):
            raise HamiltonianValidationError("integrals contain non-finite entries")
        if not np.allclose(h, h.T, atol=SYMMETRY_TOLERANCE, rtol=0.0):
            raise HamiltonianValidationError("one-body tensor is not symmetric")
        for perm in _G_GENERATORS:
            if not np.allclose(g, g.transpose(perm), atol=SYMMETRY_TOLERANCE, rtol=0.0):
                raise HamiltonianValidationError(
                    f"two-body tensor violates the {perm} permutation symmetry"
                )
        h.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "constant", float(self.constant))

    @property
    def n_qubits(self) -> int:
        return 2 * self.n_spatial

    @classmethod
    def zeros(cls, n_spatial: int, constant: float = 0.0, **kwargs) -> "FermionHamiltonian":
        n = n_spatial
        return cls(n, constant, np.zeros((n, n)), np.zeros((n, n, n, n)), **kwargs)
