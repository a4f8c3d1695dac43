"""
Rayleigh quotient f(c, θ) = cᵀH(θ)c / cᵀS(θ)c over an effective basis.

The optimization vector is laid out as [c_0 … c_{N−1}, θ of circuit 0, …,
θ of circuit M−1], each circuit's angles in gate order. Circuits M and above
stay at their frozen bindings.
"""

from collections.abc import Sequence

import numpy as np

from effbasis.core.errors import DimensionError, OptimizationError
from effbasis.hamiltonian.qubit import QubitHamiltonian
from effbasis.models.graph import BasisSpec
from effbasis.simulator.statevector import simulate

NORM_FLOOR = 1e-12
IMAG_TOLERANCE = 1e-9


class BasisEvaluator:
    """Keeps |ψ_k⟩ and H|ψ_k⟩ for the current angles and rebuilds H and S."""

    def __init__(
        self,
        basis: BasisSpec,
        qh: QubitHamiltonian,
        bindings: Sequence[dict[str, float]],
        n_optimized: int,
    ):
        if len(bindings) != len(basis):
            raise DimensionError(f"{len(bindings)} bindings for {len(basis)} circuits")
        if not 0 <= n_optimized <= len(basis):
            raise DimensionError(f"M={n_optimized} outside 0..{len(basis)}")
        self.basis = basis
        self.qh = qh
        self.n_optimized = n_optimized
        self.bindings = [dict(b) for b in bindings]
        self.names = [basis.circuits[k].parameter_names for k in range(n_optimized)]
        self._kets = np.empty((qh.dim, len(basis)), dtype=np.complex128)
        self._h_kets = np.empty_like(self._kets)
        for k in range(len(basis)):
            self._kets[:, k], self._h_kets[:, k] = self._evaluate(k, self.bindings[k])

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def n_angles(self) -> int:
        return sum(len(n) for n in self.names)

    def _evaluate(self, k: int, binding: dict[str, float]) -> tuple[np.ndarray, np.ndarray]:
        ket = simulate(self.basis.circuits[k], binding).amplitudes
        return ket, self.qh.apply(ket)

    def matrices(self) -> tuple[np.ndarray, np.ndarray]:
        hmat = self._kets.conj().T @ self._h_kets
        smat = self._kets.conj().T @ self._kets
        return _real_symmetric(hmat), _real_symmetric(smat)

    def angles(self) -> np.ndarray:
        return np.array(
            [self.bindings[k][n] for k in range(self.n_optimized) for n in self.names[k]],
            dtype=float,
        )

    def set_angles(self, theta: np.ndarray) -> None:
        """Update the first M circuits, re-simulating only those that changed."""
        if theta.size != self.n_angles:
            raise DimensionError(f"{theta.size} angles given, {self.n_angles} expected")
        offset = 0
        for k in range(self.n_optimized):
            names = self.names[k]
            values = theta[offset : offset + len(names)]
            offset += len(names)
            if all(self.bindings[k][n] == v for n, v in zip(names, values)):
                continue
            self.bindings[k].update(zip(names, (float(v) for v in values)))
            self._kets[:, k], self._h_kets[:, k] = self._evaluate(k, self.bindings[k])

    def _matrices_with(self, k: int, binding: dict[str, float]) -> tuple[np.ndarray, np.ndarray]:
        """H and S with circuit k replaced, without touching the cached state."""
        ket, h_ket = self._evaluate(k, binding)
        hmat, smat = self.matrices()
        h_row = ket.conj() @ self._h_kets
        s_row = ket.conj() @ self._kets
        h_row[k] = np.vdot(ket, h_ket)
        s_row[k] = np.vdot(ket, ket)
        hmat[k, :] = hmat[:, k] = h_row.real
        smat[k, :] = smat[:, k] = s_row.real
        return hmat, smat

    def value(self, c: np.ndarray) -> float:
        hmat, smat = self.matrices()
        return quotient(c, hmat, smat)[0]

    def value_and_gradient(self, x: np.ndarray, step: float) -> tuple[float, np.ndarray]:
        """f and ∂f over x = [c, θ]; analytic in c, central differences in θ."""
        n = self.size
        c, theta = x[:n], x[n:]
        self.set_angles(theta)
        hmat, smat = self.matrices()
        value, norm = quotient(c, hmat, smat)
        grad = np.empty_like(x)
        grad[:n] = 2.0 * (hmat @ c - value * (smat @ c)) / norm

        offset = n
        for k in range(self.n_optimized):
            for name in self.names[k]:
                base = self.bindings[k][name]
                shifted = []
                for sign in (1.0, -1.0):
                    binding = {**self.bindings[k], name: base + sign * step}
                    shifted.append(quotient(c, *self._matrices_with(k, binding))[0])
                grad[offset] = (shifted[0] - shifted[1]) / (2.0 * step)
                offset += 1
        return value, grad


def quotient(c: np.ndarray, hmat: np.ndarray, smat: np.ndarray) -> tuple[float, float]:
    """(cᵀHc / cᵀSc, cᵀSc).

    Raises:
        OptimizationError: cᵀSc below 1e-12.
    """
    norm = float(c @ smat @ c)
    if norm < NORM_FLOOR:
        raise OptimizationError(f"degenerate combination: cᵀSc = {norm:.3e}")
    return float(c @ hmat @ c) / norm, norm


def rayleigh_objective(
    basis: BasisSpec,
    qh: QubitHamiltonian,
    c: np.ndarray,
    bindings: Sequence[dict[str, float]],
    n_optimized: int,
    step: float = 1e-4,
) -> tuple[float, np.ndarray]:
    """Value and gradient of the Rayleigh quotient at (c, θ).

    The gradient runs over c followed by the angles of the first
    `n_optimized` circuits.
    """
    c = np.asarray(c, dtype=float)
    if c.size != len(basis):
        raise DimensionError(f"{c.size} coefficients for {len(basis)} circuits")
    evaluator = BasisEvaluator(basis, qh, bindings, n_optimized)
    return evaluator.value_and_gradient(np.concatenate([c, evaluator.angles()]), step)


def _real_symmetric(mat: np.ndarray) -> np.ndarray:
    mat = 0.5 * (mat + mat.conj().T)
    if mat.size and float(np.max(np.abs(mat.imag))) > IMAG_TOLERANCE:
        raise OptimizationError("basis matrix elements are not real")
    return np.ascontiguousarray(mat.real)
