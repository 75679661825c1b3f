"""
谱变换服务测试

测试多项式模型、标量/矩阵求值、谱映射性质与仿射端点
"""

import numpy as np
import pytest

from spectral_dk.core.exceptions import DegenerateTransform, InvalidInput
from spectral_dk.models.matrix import SymMatrix
from spectral_dk.models.transform import PolynomialTransform
from spectral_dk.services.linalg_service import linalg_service
from spectral_dk.services.subspace_service import subspace_service
from spectral_dk.services.transform_service import transform_service
from tests.base import BaseTestCase

SPECTRAL_MAPPING_INSTANCES = 200


class TestPolynomialTransform:
    """多项式模型测试类"""

    def test_trailing_zeros_trimmed(self):
        p = PolynomialTransform.from_coefficients([1.0, 2.0, 0.0, 0.0])
        assert p.coefficients == (1.0, 2.0)
        assert p.degree == 1
        assert p.is_affine

    def test_constant_polynomial(self):
        p = PolynomialTransform.from_coefficients([0.0, 0.0])
        assert p.degree == 0
        assert p.c1 == 0.0

    def test_affine_and_identity(self):
        f = PolynomialTransform.affine(0.5, -2.0)
        assert (f.c1, f.c0) == (0.5, -2.0)
        assert PolynomialTransform.identity().coefficients == (0.0, 1.0)

    def test_degree_limit(self):
        PolynomialTransform.from_coefficients([1.0] * 7)
        with pytest.raises(InvalidInput):
            PolynomialTransform.from_coefficients([1.0] * 8)

    def test_invalid_coefficients(self):
        with pytest.raises(InvalidInput):
            PolynomialTransform.from_coefficients([])
        with pytest.raises(InvalidInput):
            PolynomialTransform.from_coefficients([1.0, np.nan])

    def test_string_form(self):
        assert str(PolynomialTransform.affine(2.0, 1.0)) == "2·x + 1"


class TestEvaluation(BaseTestCase):
    """多项式求值测试类"""

    def test_eval_scalar(self):
        p = PolynomialTransform.from_coefficients([1.0, 2.0, 3.0])
        assert transform_service.eval_scalar(p, 2.0) == 17.0
        assert transform_service.eval_scalar(p, 0.0) == 1.0

    def test_eval_values_keeps_order(self):
        p = PolynomialTransform.from_coefficients([0.0, 0.0, 1.0])
        values = transform_service.eval_values(p, [-2.0, 1.0, 3.0])
        assert values.tolist() == [4.0, 1.0, 9.0]

    def test_eval_matrix_on_diagonal(self):
        p = PolynomialTransform.from_coefficients([1.0, -1.0, 0.5])
        m = SymMatrix.diagonal([0.0, 1.0, 2.0])
        result = transform_service.eval_matrix(p, m)
        assert np.allclose(np.diag(result.entries), [1.0, 0.5, 1.0])
        assert np.allclose(result.entries - np.diag(np.diag(result.entries)), 0.0)

    def test_eval_matrix_matches_explicit_powers(self, rng):
        m = self.random_symmetric(rng, 5)
        p = PolynomialTransform.from_coefficients([0.3, -1.0, 0.2, 0.5])
        a = m.entries
        expected = 0.3 * np.eye(5) - a + 0.2 * a @ a + 0.5 * a @ a @ a
        assert np.allclose(transform_service.eval_matrix(p, m).entries, expected, atol=1e-10)

    def test_transform_spectrum_keeps_index_order(self):
        spectrum = self.diagonal_spectrum([0.0, 1.0, 2.0])
        ts = transform_service.transform_spectrum(PolynomialTransform.affine(-1.0, 0.0), spectrum)
        assert ts.values.tolist() == [0.0, -1.0, -2.0]
        assert ts.value(3) == -2.0

    def test_spectral_mapping(self, rng):
        """p(Φ) 的排序特征值等于排序后的 p(φᵢ)"""
        for _ in range(SPECTRAL_MAPPING_INSTANCES):
            n = int(rng.integers(2, 9))
            degree = int(rng.integers(0, 4))
            p = PolynomialTransform.from_coefficients(rng.uniform(-1.0, 1.0, size=degree + 1))
            m = self.random_symmetric(rng, n, scale=0.5)

            spectrum = linalg_service.eig_sym(m)
            mapped = np.sort(transform_service.transform_spectrum(p, spectrum).values)
            direct = linalg_service.eigenvalues(transform_service.eval_matrix(p, m))
            assert np.allclose(direct, mapped, atol=1e-7)

    def test_eigenspaces_preserved(self, rng):
        """单调递增多项式保持特征向量块"""
        p = PolynomialTransform.from_coefficients([0.2, 1.0, 0.0, 1.0])
        for _ in range(50):
            n = int(rng.integers(2, 9))
            m = self.matrix_with_spectrum(rng, self.separated_eigenvalues(rng, n))
            j, r = self.random_block_indices(rng, n)
            original = linalg_service.eig_sym(m).block(j, r)
            transformed = linalg_service.eig_sym(transform_service.eval_matrix(p, m)).block(j, r)
            assert subspace_service.rho1(original, transformed) <= 1e-7


class TestAffine(BaseTestCase):
    """仿射变换测试类"""

    def test_require_affine(self):
        assert transform_service.require_affine(PolynomialTransform.affine(2.0, 1.0)) == (2.0, 1.0)
        with pytest.raises(InvalidInput):
            transform_service.require_affine(PolynomialTransform.from_coefficients([0.0, 1.0, 1.0]))
        with pytest.raises(DegenerateTransform):
            transform_service.require_affine(PolynomialTransform.affine(0.0, 3.0))

    def test_endpoints_positive_slope(self):
        spectrum = self.diagonal_spectrum([0.0, 1.0, 2.0, 3.0])
        f = PolynomialTransform.affine(2.0, 1.0)
        assert transform_service.affine_endpoints(f, spectrum, 1, 2) == (1.0, 3.0, 5.0, 7.0)

    def test_endpoints_negative_slope(self):
        spectrum = self.diagonal_spectrum([0.0, 1.0, 2.0, 3.0])
        f = PolynomialTransform.affine(-1.0, 0.0)
        assert transform_service.affine_endpoints(f, spectrum, 1, 2) == (-3.0, -2.0, -1.0, 0.0)

    def test_endpoints_at_boundaries(self):
        spectrum = self.diagonal_spectrum([0.0, 1.0, 2.0])
        plus = transform_service.affine_endpoints(PolynomialTransform.affine(1.0), spectrum, 0, 3)
        assert plus[0] == -np.inf and plus[3] == np.inf
        minus = transform_service.affine_endpoints(PolynomialTransform.affine(-1.0), spectrum, 0, 3)
        assert minus[0] == -np.inf and minus[3] == np.inf
