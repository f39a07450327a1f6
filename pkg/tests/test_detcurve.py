"""Test arc lengths of coefficient curves and real roots of determinantal equations"""

import logging
import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.detcurve import (
    Domain,
    FunctionBasis,
    PolynomialBasis,
    RootMethod,
    TrigonometricBasis,
    alpha1,
    alpha_ratio_mc,
    count_roots,
    find_roots,
    predicted_root_count,
)
from src.detcurve.arclength import adaptive_length
from src.ensembles import RngStream, sample_matrix
from src.linalg import HermitianMatrix
from src.models.ensemble import EnsembleSpec
from src.models.settings import DetCurveSettings
from src.utils.errors import DegeneratePencilError, InputDomainError

LINEAR = PolynomialBasis([[1.0, 0.0], [0.0, 1.0]])


class TestAlpha1:
    """Test the spherical length of the projected coefficient curve"""

    def test_linear_basis(self):
        assert alpha1(LINEAR) == pytest.approx(1.0, abs=1e-8)

    def test_great_circle(self):
        assert alpha1(TrigonometricBasis(1)) == pytest.approx(2.0, abs=1e-8)

    def test_reparametrisation_and_scaling(self):
        stretched = PolynomialBasis([[1.0, 0.0], [0.0, 2.0]])
        scaled = PolynomialBasis(3.0 * np.eye(2))
        assert alpha1(stretched) == pytest.approx(alpha1(LINEAR), abs=1e-9)
        assert alpha1(scaled) == pytest.approx(alpha1(LINEAR), abs=1e-9)

    def test_rotation_invariance(self):
        basis = PolynomialBasis([[1.0, 0.5, 0.0], [0.0, 1.0, 0.3], [0.2, 0.0, 1.0]])
        assert alpha1(basis.rotated(0.7)) == pytest.approx(alpha1(basis), rel=1e-9)
        assert alpha1(basis.rotated(1.1, axes=(1, 2))) == pytest.approx(alpha1(basis), rel=1e-9)

    def test_monomial_closed_form_matches_generic_path(self):
        generic = PolynomialBasis(np.eye(4))
        assert alpha1(PolynomialBasis.monomials(3)) == pytest.approx(alpha1(generic), rel=1e-8)

    def test_monomials_grow_logarithmically(self):
        k = 10_000
        value = alpha1(PolynomialBasis.monomials(k))
        assert value == pytest.approx(2.0 / math.pi * math.log(k), rel=0.15)

    def test_function_basis_on_circle(self):
        basis = FunctionBasis([np.cos, np.sin], [lambda t: -np.sin(t), np.cos], Domain.circle())
        assert alpha1(basis) == pytest.approx(2.0, abs=1e-8)

    def test_domain_validation(self):
        with pytest.raises(InputDomainError):
            Domain.interval(1.0, 0.0)
        with pytest.raises(InputDomainError):
            TrigonometricBasis(0)

    def test_noise_floor_does_not_exhaust_refinement(self, caplog):
        settings = DetCurveSettings(panels=16, gauss_nodes=8, max_refinements=10)
        # ripple far below the panel width behaves like rounding noise
        speed = lambda u: 1.0 + 1e-8 * np.sin(1e7 * u)
        with caplog.at_level(logging.WARNING):
            length = adaptive_length(speed, 0.0, 2.0, settings)
        assert length == pytest.approx(2.0, abs=1e-6)
        assert not [r for r in caplog.records if r.levelno >= logging.WARNING]

    def test_smooth_speed_converges_without_stalling(self, caplog):
        settings = DetCurveSettings(panels=4, gauss_nodes=8, max_refinements=6)
        with caplog.at_level(logging.WARNING):
            length = adaptive_length(np.cos, 0.0, 1.0, settings)
        assert length == pytest.approx(math.sin(1.0), rel=1e-12)
        assert not caplog.records


class TestRoots:
    """Test root finding along the curve"""

    def test_diagonal_pencil(self):
        scan = find_roots(LINEAR, [HermitianMatrix.diagonal([1.0, -1.0]), HermitianMatrix.identity(2)])
        assert scan.method is RootMethod.COMPANION
        assert scan.roots == pytest.approx([-1.0, 1.0])

    def test_scan_finds_the_same_roots(self):
        matrices = [HermitianMatrix.diagonal([1.0, -1.0]), HermitianMatrix.identity(2)]
        scan = find_roots(LINEAR, matrices, method="scan")
        assert scan.roots == pytest.approx([-1.0, 1.0], abs=1e-9)
        assert scan.tangencies == 0

    def test_interval_domain(self):
        basis = PolynomialBasis(np.eye(2), Domain.interval(0.0, 5.0))
        matrices = [HermitianMatrix.diagonal([1.0, -1.0]), HermitianMatrix.identity(2)]
        assert find_roots(basis, matrices).roots == pytest.approx([1.0])

    def test_single_eigenvalue_linear(self):
        rng = RngStream(3, 0).generator()
        spec = EnsembleSpec(beta=1, n=1)
        for _ in range(20):
            assert count_roots(LINEAR, [sample_matrix(spec, rng), sample_matrix(spec, rng)]) == 1

    def test_trigonometric_scan(self):
        spec = EnsembleSpec(beta=2, n=1)
        rng = RngStream(5, 0).generator()
        scan = find_roots(TrigonometricBasis(1), [sample_matrix(spec, rng), sample_matrix(spec, rng)])
        assert scan.method is RootMethod.SCAN
        assert scan.count == 2
        assert np.all((scan.roots >= 0) & (scan.roots < 2 * math.pi))

    @pytest.mark.parametrize("beta", [1, 2])
    def test_companion_agrees_with_scan(self, beta):
        rng = RngStream(11, beta).generator()
        for trial in range(100):
            n = 1 + trial % 6
            k = 1 + trial % 3
            spec = EnsembleSpec(beta=beta, n=n)
            basis = PolynomialBasis.monomials(k)
            matrices = [sample_matrix(spec, rng) for _ in range(k + 1)]
            companion = find_roots(basis, matrices, method="companion")
            scan = find_roots(basis, matrices, method="scan")
            assert companion.count == scan.count
            assert scan.roots == pytest.approx(companion.roots, abs=1e-6, rel=1e-6)

    def test_quaternion_roots_come_in_pairs(self):
        spec = EnsembleSpec(beta=4, n=3)
        rng = RngStream(13, 0).generator()
        matrices = [sample_matrix(spec, rng), sample_matrix(spec, rng)]
        companion = find_roots(LINEAR, matrices, method="companion")
        scan = find_roots(LINEAR, matrices, method="scan")
        assert companion.count == scan.count
        assert companion.count <= 3

    def test_tangency(self):
        zero = HermitianMatrix.diagonal([0.0])
        one = HermitianMatrix.diagonal([1.0])
        basis = PolynomialBasis.monomials(2)
        assert find_roots(basis, [zero, zero, one], method="companion").count == 2
        scan = find_roots(basis, [zero, zero, one], method="scan")
        assert scan.count == 0
        assert scan.tangencies >= 1

    def test_degenerate_combination(self):
        zero = HermitianMatrix.diagonal([0.0, 0.0])
        singular = HermitianMatrix.diagonal([1.0, 0.0])
        with pytest.raises(DegeneratePencilError):
            find_roots(LINEAR, [zero, zero])
        with pytest.raises(DegeneratePencilError):
            find_roots(LINEAR, [singular, singular])
        with pytest.raises(DegeneratePencilError):
            find_roots(TrigonometricBasis(1), [singular, singular])

    def test_matrix_count_must_match_basis(self):
        with pytest.raises(InputDomainError):
            find_roots(LINEAR, [HermitianMatrix.identity(2)])

    def test_companion_needs_polynomial_basis(self):
        matrices = [HermitianMatrix.identity(1), HermitianMatrix.diagonal([-1.0])]
        with pytest.raises(InputDomainError):
            find_roots(TrigonometricBasis(1), matrices, method="companion")


class TestRootCountExperiment:
    """Test Monte Carlo root counts against alpha1 times the volume ratio"""

    def test_prediction_at_one_eigenvalue_is_alpha1(self):
        assert predicted_root_count(TrigonometricBasis(1), 1, 1) == pytest.approx(2.0)

    def test_single_eigenvalue_mean_is_alpha1(self):
        basis = PolynomialBasis.monomials(2)
        estimate = alpha_ratio_mc(basis, EnsembleSpec(beta=1, n=1, seed=17), 20_000, threads=2)
        assert estimate.agrees_with(alpha1(basis), sigmas=3)
        assert estimate.extra['alpha1'] == pytest.approx(alpha1(basis))

    def test_conjugation_does_not_change_counts(self):
        spec = EnsembleSpec(beta=1, n=3, seed=23)
        q, _ = np.linalg.qr(np.random.default_rng(0).standard_normal((3, 3)))
        plain = alpha_ratio_mc(LINEAR, spec, 500, threads=1)
        rotated = alpha_ratio_mc(LINEAR, spec, 500, threads=1, conjugator=q)
        assert plain.mean == pytest.approx(rotated.mean, abs=0.01)

    def test_conjugator_shape(self):
        with pytest.raises(InputDomainError):
            alpha_ratio_mc(LINEAR, EnsembleSpec(beta=1, n=3), 10, conjugator=np.eye(2))

    @pytest.mark.slow
    def test_rotated_basis_gives_same_mean(self):
        spec = EnsembleSpec(beta=1, n=4, seed=29)
        basis = PolynomialBasis.monomials(2)
        plain = alpha_ratio_mc(basis, spec, 20_000)
        rotated = alpha_ratio_mc(basis.rotated(0.9), spec.model_copy(update={'seed': 31}), 20_000)
        assert abs(plain.mean - rotated.mean) <= 3 * math.hypot(plain.stderr, rotated.stderr)

    @pytest.mark.slow
    def test_square_root_growth(self):
        estimate = alpha_ratio_mc(LINEAR, EnsembleSpec(beta=1, n=50, seed=37), 2000)
        target = 2.0 / math.sqrt(math.pi) * math.sqrt(50)
        assert estimate.extra['ratio'] == pytest.approx(target, rel=0.12)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
