"""Test self-adjoint matrices, eigensolvers, nearest singular matrices and pencils"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import ortho_group, unitary_group

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.ensembles.rng import RngStream
from src.ensembles.samplers import sample_matrices, sample_matrix
from src.linalg import (
    HermitianMatrix,
    Spectrum,
    collapse_kramers_pairs,
    eckart_young,
    eigenvalues,
    householder_tridiagonal,
    index_plus,
    least_singular,
    solve_pencil,
    tridiagonal_ql,
)
from src.models.ensemble import EnsembleSpec
from src.utils.errors import (
    ConvergenceError,
    DegenerateInputError,
    DegeneratePencilError,
    InputDomainError,
    UnsupportedBetaError,
)


EXAMPLE_Q2 = [[0.0, 1.0, 1.0], [1.0, 1.0, 1.0], [1.0, 1.0, 0.0]]


def _random(beta, n, seed=0):
    return sample_matrix(EnsembleSpec(beta=beta, n=n, seed=seed), RngStream(seed))


class TestHermitianMatrix:
    """Test storage, validation and arithmetic"""

    def test_from_upper_mirrors_upper_triangle(self):
        q = HermitianMatrix.from_upper([[1.0, 2.0], [99.0, 3.0]])
        assert q.entries[1, 0] == 2.0
        assert q.frobenius_norm == pytest.approx(math.sqrt(1 + 4 + 4 + 9))

    def test_entries_are_read_only(self):
        q = HermitianMatrix.identity(3)
        with pytest.raises(ValueError):
            q.entries[0, 0] = 5.0

    def test_non_finite_rejected(self):
        with pytest.raises(InputDomainError):
            HermitianMatrix.from_upper([[1.0, math.nan], [0.0, 1.0]])

    def test_unsupported_beta(self):
        with pytest.raises(UnsupportedBetaError):
            HermitianMatrix.from_upper([[1.0]], beta=3)

    def test_quaternion_norm_and_trace_count_once(self):
        q = HermitianMatrix.diagonal([1.0, 2.0], beta=4)
        assert q.size == 4
        assert q.trace == pytest.approx(3.0)
        assert q.frobenius_norm == pytest.approx(math.sqrt(5.0))
        assert q.symplectic_defect() == 0.0

    def test_combine_and_mismatch(self):
        a = HermitianMatrix.identity(2)
        b = HermitianMatrix.diagonal([1.0, -1.0])
        c = HermitianMatrix.combine([2.0, 1.0], [a, b])
        assert np.allclose(c.entries, np.diag([3.0, 1.0]))
        with pytest.raises(InputDomainError):
            a + HermitianMatrix.identity(3)

    def test_real_dimension(self):
        assert HermitianMatrix.identity(3, beta=1).real_dimension == 6
        assert HermitianMatrix.identity(3, beta=2).real_dimension == 9
        assert HermitianMatrix.identity(3, beta=4).real_dimension == 15


class TestEigenvalues:
    """Test the Householder + QL solver against LAPACK"""

    @pytest.mark.parametrize("beta", [1, 2, 4])
    @pytest.mark.parametrize("n", [1, 2, 5, 12])
    def test_ql_matches_lapack(self, beta, n):
        q = _random(beta, n, seed=n)
        ours = eigenvalues(q, "ql").eigenvalues
        ref = np.linalg.eigvalsh(q.entries)
        if beta == 4:
            ref = ref.reshape(-1, 2).mean(axis=1)
        assert len(ours) == n
        assert np.allclose(ours, ref, atol=1e-10)

    def test_lapack_solver_agrees(self):
        q = _random(1, 8, seed=3)
        assert np.allclose(eigenvalues(q, "ql").eigenvalues, eigenvalues(q, "lapack").eigenvalues, atol=1e-12)

    def test_tridiagonal_reduction_preserves_spectrum(self):
        q = _random(2, 6, seed=4)
        d, e = householder_tridiagonal(q.entries)
        assert np.all(e >= 0)
        t = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
        assert np.allclose(np.linalg.eigvalsh(t), np.linalg.eigvalsh(q.entries), atol=1e-10)

    def test_iteration_cap(self):
        with pytest.raises(ConvergenceError):
            tridiagonal_ql(np.array([1.0, 2.0, 3.0]), np.array([0.5, 0.5]), max_iterations=0)

    def test_unpaired_kramers_spectrum(self):
        with pytest.raises(InputDomainError):
            collapse_kramers_pairs(np.array([0.0, 1.0, 2.0, 3.0]))


class TestSpectrum:
    """Test statistics read off a spectrum"""

    def test_index_and_least_singular(self):
        s = Spectrum(np.array([-2.0, 0.5, 3.0]), 1, 3)
        assert s.index_plus() == 2
        assert s.index_minus() == 1
        assert s.least_singular() == 0.5
        assert not s.is_singular()
        assert s.abs_det() == pytest.approx(3.0)

    def test_exact_zero_is_singular(self):
        s = Spectrum(np.array([-1.0, 0.0, 1.0]), 1, 3)
        assert s.is_singular()
        assert s.index_plus() == 1
        assert s.log_abs_det() == -math.inf

    def test_unsorted_rejected(self):
        with pytest.raises(InputDomainError):
            Spectrum(np.array([1.0, 0.0]), 1, 2)

    def test_example_quadric(self):
        # characteristic polynomial (x + 1)(x^2 - 2x - 1)
        s = eigenvalues(HermitianMatrix.from_upper(EXAMPLE_Q2))
        root2 = math.sqrt(2.0)
        assert np.allclose(s.eigenvalues, [-1.0, 1.0 - root2, 1.0 + root2], atol=1e-12)
        assert index_plus(s) == 1
        assert s.index_minus() == 2
        assert least_singular(s) == pytest.approx(root2 - 1.0, abs=1e-12)

    def test_identity_indices(self):
        assert index_plus(eigenvalues(HermitianMatrix.identity(5))) == 5
        assert index_plus(eigenvalues(-HermitianMatrix.identity(5))) == 0

    @pytest.mark.parametrize("solver", ["ql", "lapack"])
    @pytest.mark.parametrize("beta", [1, 2, 4])
    @pytest.mark.parametrize("n", [1, 4, 9])
    def test_trace_and_norm(self, solver, beta, n):
        q = _random(beta, n, seed=30 + n)
        values = eigenvalues(q, solver).eigenvalues
        scale = 1.0 + q.frobenius_norm
        assert abs(np.sum(values) - q.trace) <= 1e-10 * scale
        assert np.sum(values ** 2) == pytest.approx(q.frobenius_norm ** 2, rel=1e-10)


class TestConjugation:
    """Test invariance of spectra under unitary change of basis"""

    @staticmethod
    def _unitary(beta, n, seed):
        if beta == 1:
            return ortho_group.rvs(n, random_state=seed)
        w = unitary_group.rvs(n, random_state=seed)
        if beta == 2:
            return w
        # complex unitaries embed as quaternionic ones
        zero = np.zeros((n, n))
        return np.block([[w, zero], [zero, w.conj()]])

    @pytest.mark.parametrize("beta", [1, 2, 4])
    @pytest.mark.parametrize("n", [2, 5])
    def test_spectrum_is_invariant(self, beta, n):
        for seed in range(5):
            q = _random(beta, n, seed=seed)
            rotated = q.conjugate(self._unitary(beta, n, seed + 100))
            assert rotated.symplectic_defect() < 1e-12
            assert np.allclose(eigenvalues(rotated).eigenvalues, eigenvalues(q).eigenvalues, atol=1e-9)

    def test_shape_mismatch(self):
        with pytest.raises(InputDomainError):
            HermitianMatrix.identity(3).conjugate(np.eye(2))


class TestEckartYoung:
    """Test the nearest singular matrix"""

    @pytest.mark.parametrize("beta", [1, 2])
    @pytest.mark.parametrize("n", [3, 5])
    def test_nearest_is_singular_at_least_singular_distance(self, beta, n):
        spec = EnsembleSpec(beta=beta, n=n)
        stack = sample_matrices(spec, RngStream(11), 100)
        for entries in stack:
            q = HermitianMatrix(beta, n, np.array(entries))
            result = eckart_young(q)
            sigma = eigenvalues(q).least_singular()
            assert result.distance == pytest.approx(sigma, rel=1e-12)
            assert eigenvalues(result.nearest).least_singular() <= 1e-9 * q.frobenius_norm
            assert (q - result.nearest).frobenius_norm == pytest.approx(sigma, rel=1e-9)

    @pytest.mark.parametrize("beta", [1, 2])
    def test_random_singular_matrices_never_closer(self, beta):
        n = 3
        spec = EnsembleSpec(beta=beta, n=n)
        rng = np.random.default_rng(5)
        stack = sample_matrices(spec, RngStream(12), 50)
        for entries in stack:
            q = HermitianMatrix(beta, n, np.array(entries))
            best = eckart_young(q).distance
            for other in sample_matrices(spec, rng, 200):
                w, v = np.linalg.eigh(other)
                w[np.argmin(np.abs(w))] = 0.0
                singular = HermitianMatrix.from_upper((v * w) @ v.conj().T, beta)
                assert (q - singular).frobenius_norm >= best * (1 - 1e-12)

    @pytest.mark.slow
    @pytest.mark.parametrize("beta", [1, 2])
    def test_thousand_instances_against_thousand_singular_matrices(self, beta):
        n = 4
        spec = EnsembleSpec(beta=beta, n=n)
        w, v = np.linalg.eigh(sample_matrices(spec, RngStream(13), 1000))
        w[np.arange(len(w)), np.argmin(np.abs(w), axis=1)] = 0.0
        singular = (v * w[:, None, :]) @ v.conj().transpose(0, 2, 1)
        for entries in sample_matrices(spec, RngStream(14), 1000):
            q = HermitianMatrix(beta, n, np.array(entries))
            result = eckart_young(q)
            sigma = least_singular(eigenvalues(q, "ql"))
            assert result.distance == pytest.approx(sigma, rel=1e-12)
            distances = np.sqrt(np.sum(np.abs(q.entries - singular) ** 2, axis=(1, 2)))
            assert np.all(distances >= sigma - 1e-9)

    def test_quaternion_drops_kramers_pair(self):
        q = HermitianMatrix.diagonal([3.0, -0.5, 2.0], beta=4)
        result = eckart_young(q)
        assert result.distance == pytest.approx(0.5)
        assert np.allclose(eigenvalues(result.nearest).eigenvalues, [0.0, 2.0, 3.0], atol=1e-12)

    def test_corank_two(self):
        q = HermitianMatrix.diagonal([3.0, -0.5, 1.0])
        result = eckart_young(q, corank=2)
        assert result.distance == pytest.approx(math.sqrt(1.25))

    def test_singular_input(self):
        q = HermitianMatrix.diagonal([1.0, 0.0])
        with pytest.raises(DegenerateInputError) as info:
            eckart_young(q)
        assert info.value.distance == 0.0
        assert info.value.nearest is q


class TestPencil:
    """Test singular angles of cos(t) Q1 + sin(t) Q2"""

    @pytest.mark.parametrize("method", ["qz", "chebyshev"])
    def test_diagonal_pencil(self, method):
        q1 = HermitianMatrix.diagonal([1.0, -1.0])
        q2 = HermitianMatrix.identity(2)
        roots = solve_pencil(q1, q2, method)
        expected = [math.pi / 4, 3 * math.pi / 4, 5 * math.pi / 4, 7 * math.pi / 4]
        assert np.allclose(roots.angles, expected, atol=1e-9)
        assert not roots.merged

    def test_antipodal_pairs(self):
        q1, q2 = _random(1, 6, seed=1), _random(1, 6, seed=2)
        angles = solve_pencil(q1, q2).angles
        assert len(angles) % 2 == 0
        assert len(angles) <= 12
        half = len(angles) // 2
        assert np.allclose(angles[half:] - angles[:half], math.pi, atol=1e-9)

    def test_methods_agree(self):
        q1, q2 = _random(1, 5, seed=7), _random(1, 5, seed=8)
        qz = solve_pencil(q1, q2, "qz").angles
        cheb = solve_pencil(q1, q2, "chebyshev").angles
        assert np.allclose(qz, cheb, atol=1e-7)

    def test_quaternion_pencil_counts_each_root_once(self):
        q1 = HermitianMatrix.diagonal([1.0, -1.0], beta=4)
        q2 = HermitianMatrix.identity(2, beta=4)
        roots = solve_pencil(q1, q2)
        assert len(roots.angles) == 4
        assert not roots.merged

    def test_degenerate_pencil(self):
        zero = HermitianMatrix.diagonal([0.0, 0.0])
        with pytest.raises(DegeneratePencilError):
            solve_pencil(zero, zero)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
