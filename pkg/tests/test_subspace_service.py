"""
子空间距离服务测试

测试典型角、ρ1 / ρ2、c 因子与对齐矩阵，并在随机实例上与显式公式对照
"""

import math

import numpy as np
import pytest

from spectral_dk.core.exceptions import InvalidInput, ShapeError
from spectral_dk.models.subspace import EigenvectorBlock
from spectral_dk.services.subspace_service import subspace_service
from tests.base import BaseTestCase

ORACLE_INSTANCES = 1000


class TestCanonicalAngles(BaseTestCase):
    """典型角测试类"""

    def test_identical_blocks(self, rng):
        w = self.random_block(rng, 6, 2)
        angles = subspace_service.canonical_angle_cosines(w, w)
        assert np.allclose(angles.cosines, 1.0)
        assert np.allclose(angles.sines, 0.0, atol=1e-12)
        assert subspace_service.rho1(w, w) < 1e-7
        assert subspace_service.rho2(w, w) < 1e-12

    def test_orthogonal_lines(self):
        w = EigenvectorBlock(basis=np.array([[1.0], [0.0]]))
        v = EigenvectorBlock(basis=np.array([[0.0], [1.0]]))
        angles = subspace_service.canonical_angle_cosines(w, v)
        assert angles.cosines[0] == pytest.approx(0.0, abs=1e-15)
        assert angles.sines[0] == pytest.approx(1.0)
        assert angles.angles[0] == pytest.approx(math.pi / 2)
        assert subspace_service.rho1(w, v) == pytest.approx(math.sqrt(2.0))
        assert subspace_service.rho2(w, v) == pytest.approx(1.0)

    def test_known_angle(self):
        theta = 0.3
        w = EigenvectorBlock(basis=np.array([[1.0], [0.0], [0.0]]))
        v = EigenvectorBlock(basis=np.array([[math.cos(theta)], [math.sin(theta)], [0.0]]))
        angles = subspace_service.canonical_angle_cosines(w, v)
        assert angles.cosines[0] == pytest.approx(math.cos(theta))
        assert angles.sines[0] == pytest.approx(math.sin(theta))
        assert subspace_service.rho2(w, v) == pytest.approx(math.sin(theta))
        assert subspace_service.rho1(w, v) == pytest.approx(math.sqrt(2.0 * (1.0 - math.cos(theta))))

    def test_only_min_r_n_minus_r_angles_stored(self, rng):
        w = self.random_block(rng, 5, 4)
        v = self.random_block(rng, 5, 4)
        angles = subspace_service.canonical_angle_cosines(w, v)
        assert angles.count == 1

    def test_full_dimension_blocks(self, rng):
        w = self.random_block(rng, 4, 4)
        v = self.random_block(rng, 4, 4)
        assert subspace_service.canonical_angle_cosines(w, v).count == 0
        assert subspace_service.rho1(w, v) == 0.0
        assert subspace_service.rho2(w, v) == 0.0

    def test_shape_mismatch(self, rng):
        with pytest.raises(ShapeError):
            subspace_service.rho1(self.random_block(rng, 5, 2), self.random_block(rng, 5, 3))
        with pytest.raises(ShapeError):
            subspace_service.rho2(self.random_block(rng, 5, 2), self.random_block(rng, 6, 2))

    def test_non_orthonormal_input_rejected(self, rng):
        basis = self.random_orthonormal(rng, 5, 2)
        w = EigenvectorBlock(basis=basis)
        stretched = EigenvectorBlock(basis=2.0 * basis)
        with pytest.raises(InvalidInput):
            subspace_service.canonical_angle_cosines(w, stretched)

    def test_from_columns_checks_stiefel(self, rng):
        basis = self.random_orthonormal(rng, 4, 2)
        assert EigenvectorBlock.from_columns(basis).stiefel_residual() < 1e-12
        with pytest.raises(InvalidInput):
            EigenvectorBlock.from_columns(basis * 1.01)


class TestDistances(BaseTestCase):
    """子空间距离测试类"""

    def test_c_factor(self):
        assert subspace_service.c_factor(10, 3) == pytest.approx(math.sqrt(6.0))
        assert subspace_service.c_factor(4, 3) == pytest.approx(math.sqrt(2.0))
        assert subspace_service.c_factor(3, 3) == 0.0

    def test_alignment_recovers_planted_rotation(self, rng):
        w = self.random_orthonormal(rng, 7, 3)
        rotation = self.random_orthonormal(rng, 3, 3)
        v = w @ rotation
        q = subspace_service.alignment_matrix(EigenvectorBlock(basis=w), EigenvectorBlock(basis=v))
        assert np.allclose(q, rotation.T, atol=1e-10)
        assert np.allclose(q.T @ q, np.eye(3), atol=1e-12)
        assert np.linalg.norm(w - v @ q) < 1e-10

    def test_spans_coincide(self, rng):
        w = self.random_orthonormal(rng, 6, 2)
        v = w @ self.random_orthonormal(rng, 2, 2)
        assert subspace_service.spans_coincide(EigenvectorBlock(basis=w), EigenvectorBlock(basis=v))
        assert not subspace_service.spans_coincide(self.random_block(rng, 6, 2),
                                                   self.random_block(rng, 6, 2))

    def test_oracle_equivalence(self, rng):
        """ρ1 与 ‖W − VQ‖_F、ρ2 与投影乘积的谱范数一致，且 ρ1 <= c·ρ2"""
        for _ in range(ORACLE_INSTANCES):
            n = int(rng.integers(2, 11))
            r = int(rng.integers(1, n + 1))
            w = self.random_block(rng, n, r)
            v = self.random_block(rng, n, r)

            rho1 = subspace_service.rho1(w, v)
            rho2 = subspace_service.rho2(w, v)
            q = subspace_service.alignment_matrix(w, v)
            rho1_oracle = np.linalg.norm(w.basis - v.basis @ q, 'fro')
            projector = w.basis @ w.basis.T @ (np.eye(n) - v.basis @ v.basis.T)
            rho2_oracle = np.linalg.norm(projector, 2)

            assert abs(rho1 - rho1_oracle) <= 1e-7
            assert abs(rho2 - rho2_oracle) <= 1e-8
            assert rho1 <= subspace_service.c_factor(n, r) * rho2 + 1e-10


class TestDistanceProperties(BaseTestCase):
    """距离的对称性、基不变性与 Procrustes 最优性测试类"""

    INSTANCES = 200
    COMPETITORS = 50

    def _random_pair(self, rng):
        n = int(rng.integers(2, 11))
        r = int(rng.integers(1, n + 1))
        return n, r, self.random_block(rng, n, r), self.random_block(rng, n, r)

    def test_symmetric_in_arguments(self, rng):
        for _ in range(self.INSTANCES):
            _, _, w, v = self._random_pair(rng)
            assert subspace_service.rho1(w, v) == pytest.approx(subspace_service.rho1(v, w), abs=1e-10)
            assert subspace_service.rho2(w, v) == pytest.approx(subspace_service.rho2(v, w), abs=1e-10)

    def test_basis_invariance(self, rng):
        """ρ(W·Q1, V·Q2) = ρ(W, V)，Q1、Q2 为任意 r×r 正交矩阵"""
        for _ in range(self.INSTANCES):
            _, r, w, v = self._random_pair(rng)
            w_rotated = EigenvectorBlock(basis=w.basis @ self.random_orthonormal(rng, r, r))
            v_rotated = EigenvectorBlock(basis=v.basis @ self.random_orthonormal(rng, r, r))
            assert subspace_service.rho1(w_rotated, v_rotated) == pytest.approx(
                subspace_service.rho1(w, v), abs=1e-10)
            assert subspace_service.rho2(w_rotated, v_rotated) == pytest.approx(
                subspace_service.rho2(w, v), abs=1e-10)

    def test_alignment_is_orthogonal_and_optimal(self, rng):
        for _ in range(self.INSTANCES):
            _, r, w, v = self._random_pair(rng)
            q = subspace_service.alignment_matrix(w, v)
            assert np.allclose(q.T @ q, np.eye(r), atol=1e-12)
            best = np.linalg.norm(w.basis - v.basis @ q, 'fro')
            for _ in range(self.COMPETITORS):
                competitor = self.random_orthonormal(rng, r, r)
                assert best <= np.linalg.norm(w.basis - v.basis @ competitor, 'fro') + 1e-12
