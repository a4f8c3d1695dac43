"""Tests for the dense eigensolver and the generalized eigenvalue problem."""

import numpy as np
import pytest
import scipy.linalg

from effbasis.core.errors import DimensionError, EigenSolverError, LinearDependenceError
from effbasis.effective.eigen import fix_phases, symmetric_eigen
from effbasis.effective.solver import EffectiveProblem, solve_generalized


def _random_problem(n_states: int, dim: int = 16, seed: int = 4):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim))
    a = a + a.T
    kets = rng.normal(size=(dim, n_states))
    kets /= np.linalg.norm(kets, axis=0)
    return kets.T @ a @ kets, kets.T @ kets


class TestSymmetricEigen:
    def test_diagonal(self):
        values, vectors = symmetric_eigen(np.diag([3.0, 1.0, 2.0]))
        assert np.allclose(values, [1.0, 2.0, 3.0])
        assert np.allclose(vectors, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])

    def test_off_diagonal_pair(self):
        a = np.array([[0.0, 1.0], [1.0, 0.0]])
        values, vectors = symmetric_eigen(a)
        assert np.allclose(values, [-1.0, 1.0])
        assert np.allclose(a @ vectors, vectors * values)
        assert np.allclose(np.abs(vectors), np.sqrt(0.5))

    def test_random_reconstruction(self):
        rng = np.random.default_rng(0)
        a = rng.normal(size=(50, 50))
        a = a + a.T
        values, vectors = symmetric_eigen(a)
        assert np.all(np.diff(values) >= 0)
        assert np.max(np.abs(vectors @ np.diag(values) @ vectors.T - a)) < 1e-9
        assert np.allclose(vectors.T @ vectors, np.eye(50), atol=1e-10)

    def test_largest_component_positive(self):
        _, vectors = symmetric_eigen(np.array([[2.0, 0.3], [0.3, -1.0]]))
        for col in vectors.T:
            assert col[np.argmax(np.abs(col))] > 0

    def test_complex_hermitian(self):
        a = np.array([[1.0, 1j], [-1j, 1.0]])
        values, _ = symmetric_eigen(a)
        assert np.allclose(values, [0.0, 2.0])

    def test_asymmetric(self):
        with pytest.raises(EigenSolverError, match="Hermitian"):
            symmetric_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_non_square(self):
        with pytest.raises(DimensionError, match="square"):
            symmetric_eigen(np.zeros((2, 3)))


class TestFixPhases:
    def test_flips_negative_pivot(self):
        out = fix_phases(np.array([[0.1], [-0.9]]))
        assert np.allclose(out[:, 0], [-0.1, 0.9])

    def test_complex_pivot_made_real(self):
        out = fix_phases(np.array([[1j], [0.1]]))
        assert out[0, 0] == pytest.approx(1.0)


class TestEffectiveProblem:
    def test_unit_diagonal_required(self):
        with pytest.raises(EigenSolverError, match="unit diagonal"):
            EffectiveProblem(np.eye(2), 2 * np.eye(2))

    def test_shape_mismatch(self):
        with pytest.raises(EigenSolverError, match="differ"):
            EffectiveProblem(np.eye(2), np.eye(3))

    def test_asymmetric_overlap(self):
        with pytest.raises(EigenSolverError, match="S is not Hermitian"):
            EffectiveProblem(np.eye(2), np.array([[1.0, 0.5], [0.2, 1.0]]))


class TestSolveGeneralized:
    def test_orthonormal_basis(self):
        result = solve_generalized(EffectiveProblem(np.diag([-1.0, 2.0]), np.eye(2)))
        assert result.ground_energy == pytest.approx(-1.0)
        assert np.allclose(result.coefficients, [1.0, 0.0])
        assert result.retained_rank == 2
        assert result.condition_number == pytest.approx(1.0)

    def test_duplicated_state(self):
        hmat = np.full((2, 2), -0.7)
        result = solve_generalized(EffectiveProblem(hmat, np.ones((2, 2))))
        assert result.retained_rank == 1
        assert len(result.discarded_overlap_eigenvalues) == 1
        assert result.ground_energy == pytest.approx(-0.7)

    def test_everything_discarded(self):
        with pytest.raises(LinearDependenceError, match="below"):
            solve_generalized(EffectiveProblem(np.eye(2), np.eye(2)), threshold=2.0)

    def test_not_positive_semidefinite(self):
        smat = np.array([[1.0, 2.0], [2.0, 1.0]])
        with pytest.raises(EigenSolverError, match="semidefinite"):
            solve_generalized(EffectiveProblem(np.eye(2), smat))

    def test_matches_dense_generalized_solver(self):
        hmat, smat = _random_problem(4)
        result = solve_generalized(EffectiveProblem(hmat, smat))
        expected = scipy.linalg.eigh(hmat, smat, eigvals_only=True)[0]
        assert result.ground_energy == pytest.approx(expected, abs=1e-10)
        c = result.coefficients
        assert c @ smat @ c == pytest.approx(1.0)
        assert np.allclose(hmat @ c, result.ground_energy * (smat @ c), atol=1e-9)

    def test_threshold_invariance(self):
        hmat, smat = _random_problem(3)
        low = solve_generalized(EffectiveProblem(hmat, smat), threshold=1e-10)
        high = solve_generalized(EffectiveProblem(hmat, smat), threshold=1e-6)
        assert low.ground_energy == pytest.approx(high.ground_energy, abs=1e-12)

    def test_adding_states_never_raises_energy(self):
        hmat, smat = _random_problem(5)
        energies = [
            solve_generalized(EffectiveProblem(hmat[:n, :n], smat[:n, :n])).ground_energy
            for n in range(1, 6)
        ]
        assert all(b <= a + 1e-10 for a, b in zip(energies, energies[1:]))

    def test_complex_hermitian_problem(self):
        hmat = np.array([[0.0, 0.5j], [-0.5j, 1.0]])
        result = solve_generalized(EffectiveProblem(hmat, np.eye(2)))
        assert result.ground_energy == pytest.approx(np.linalg.eigvalsh(hmat)[0])
