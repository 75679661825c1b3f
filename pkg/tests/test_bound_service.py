"""
DK 界服务测试

测试特征间隙假设、标准界、两种区间构造、约束判定与扩展界报告，
并在相互独立的随机实例上检查扩展界不小于实际的子空间距离
"""

import math

import numpy as np
import pytest

from spectral_dk.core.constants import IntervalChoice, NormKind
from spectral_dk.core.exceptions import GapViolation, NoValidInterval, ShapeError
from spectral_dk.models.bounds import IntervalTriplet
from spectral_dk.models.matrix import SymMatrix
from spectral_dk.models.transform import PolynomialTransform, TransformedSpectrum
from spectral_dk.services.bound_service import bound_service
from spectral_dk.services.linalg_service import linalg_service
from spectral_dk.services.transform_service import transform_service
from tests.base import BaseTestCase

VALIDITY_INSTANCES = 1000
VALIDITY_MAX_INSTANCES = 20000
TRANSFORM_TRIES = 30


def _spectra(mat_phi, mat_psi):
    return linalg_service.eig_sym(mat_phi), linalg_service.eig_sym(mat_psi)


class TestGapAssumption(BaseTestCase):
    """特征间隙假设测试类"""

    def test_distinct_spectrum(self):
        s = self.diagonal_spectrum([0.0, 1.0, 2.0, 3.0])
        assert bound_service.check_gap_assumption(s, s, 1, 2)

    def test_repeated_eigenvalue_at_block_edge(self):
        s = self.diagonal_spectrum([0.0, 1.0, 1.0, 3.0])
        assert not bound_service.check_gap_assumption(s, s, 1, 1)
        with pytest.raises(GapViolation) as exc_info:
            bound_service.require_gap_assumption(s, s, 1, 1)
        assert 'phi_2' in exc_info.value.details['gaps']

    def test_repeated_eigenvalue_inside_block(self):
        s = self.diagonal_spectrum([0.0, 1.0, 1.0, 3.0])
        assert bound_service.check_gap_assumption(s, s, 1, 2)

    def test_full_block_always_separated(self):
        s = self.diagonal_spectrum([1.0, 1.0, 1.0])
        assert bound_service.check_gap_assumption(s, s, 0, 3)

    def test_tolerance(self):
        s = self.diagonal_spectrum([0.0, 0.05, 1.0])
        assert bound_service.check_gap_assumption(s, s, 0, 1)
        assert not bound_service.check_gap_assumption(s, s, 0, 1, tol=0.1)

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            bound_service.check_gap_assumption(self.diagonal_spectrum([0.0, 1.0, 2.0]),
                                               self.diagonal_spectrum([0.0, 1.0, 2.0, 3.0]), 0, 1)


class TestStandardBound(BaseTestCase):
    """首 r 个特征向量标准界测试类"""

    def test_diagonal_pair(self, diagonal_pair):
        mat_phi, mat_psi = diagonal_pair
        s_phi, s_psi = _spectra(mat_phi, mat_psi)
        standard = bound_service.theorem4_bound(s_phi, s_psi, mat_phi, mat_psi, 1)
        assert standard.delta == pytest.approx(1.1)
        assert standard.numerator == pytest.approx(0.1)
        assert standard.c_factor == pytest.approx(math.sqrt(2.0))
        assert standard.bound_rho1 == pytest.approx(math.sqrt(2.0) * 0.1 / 1.1, abs=1e-12)


class TestIntervals(BaseTestCase):
    """区间构造与约束判定测试类"""

    PHI = [0.0, 2.0, 3.0, 5.0, 6.0]
    PSI = [0.5, 1.5, 3.5, 4.5, 7.0]

    def _transformed(self, values, p=None):
        return transform_service.transform_spectrum(p or PolynomialTransform.identity(),
                                                    self.diagonal_spectrum(values))

    def test_choice2_example(self):
        ts = self._transformed(self.PHI)
        s_psi = self.diagonal_spectrum(self.PSI)
        triplet, partition = bound_service.interval_choice2(ts, s_psi, 1, 2)
        assert (triplet.a, triplet.b, triplet.delta) == (1.5, 3.5, 1.5)
        assert partition.a1 == frozenset({4, 5})
        assert partition.a2 == frozenset({1})
        assert partition.satisfies_constraint1
        assert bound_service.check_constraints2B(ts, s_psi, 1, 2, triplet)

    def test_choice1_example(self):
        ts = self._transformed(self.PHI)
        s_psi = self.diagonal_spectrum(self.PSI)
        triplet = bound_service.interval_choice1(ts, s_psi, 1, 2)
        assert (triplet.a, triplet.b, triplet.delta) == (2.0, 3.0, 1.5)
        assert bound_service.check_constraints2A(ts, s_psi, 1, 2, triplet)

    def test_report_prefers_choice1_on_tie(self):
        mat_phi = SymMatrix.diagonal(self.PHI)
        mat_psi = SymMatrix.diagonal(self.PSI)
        report = bound_service.extended_bound(mat_phi, mat_psi, PolynomialTransform.identity(), 1, 2,
                                              spectra=(self.diagonal_spectrum(self.PHI),
                                                       self.diagonal_spectrum(self.PSI)))
        assert report.valid_choices == (IntervalChoice.CHOICE_1, IntervalChoice.CHOICE_2)
        assert report.interval.choice == IntervalChoice.CHOICE_1
        assert report.delta_used == 1.5
        assert report.numerator == pytest.approx(1.0)
        assert report.bound_rho2 == pytest.approx(1.0 / 1.5)

    def test_shifted_ladder(self):
        ts = self._transformed([0.0, 1.0, 2.0, 3.0], PolynomialTransform.affine(1.0, 0.1))
        s_psi = self.diagonal_spectrum([0.0, 1.0, 2.0, 3.0])
        t1 = bound_service.interval_choice1(ts, s_psi, 1, 2)
        t2, _ = bound_service.interval_choice2(ts, s_psi, 1, 2)
        assert t1.delta == pytest.approx(0.9)
        assert t2.delta == pytest.approx(0.9)
        assert bound_service.check_constraints2A(ts, s_psi, 1, 2, t1)
        assert bound_service.check_constraints2B(ts, s_psi, 1, 2, t2)

    def test_shifted_ladder_report(self, ladder_pair):
        mat_phi, mat_psi = ladder_pair
        report = bound_service.extended_bound(mat_phi, mat_psi, PolynomialTransform.affine(1.0, 0.1),
                                              1, 2, norm_kind=NormKind.RHO2)
        assert report.delta_used == pytest.approx(0.9)
        assert report.bound_rho2 == pytest.approx(0.1 / 0.9)
        assert report.bound == report.bound_rho2
        assert report.standard_bound is None

    def test_reflected_ladder(self):
        s = self.diagonal_spectrum([0.0, 1.0, 2.0, 3.0])
        deltas = bound_service.affine_deltas(PolynomialTransform.affine(-1.0, 3.0), s, s, 1, 2)
        assert deltas == {'delta_1_minus': 1.0, 'delta_2_minus': 1.0}

    def test_positive_slope_delta_keys(self):
        s = self.diagonal_spectrum([0.0, 1.0, 2.0, 3.0])
        deltas = bound_service.affine_deltas(PolynomialTransform.affine(1.0, 0.1), s, s, 1, 2)
        assert set(deltas) == {'delta_1_plus', 'delta_2_plus'}
        assert deltas['delta_1_plus'] == pytest.approx(0.9)

    def test_partition_with_unclassified_index(self):
        ts = TransformedSpectrum(values=np.array([0.0, 1.0, 3.0, 2.0]),
                                 source=PolynomialTransform.identity())
        interval = IntervalTriplet(a=1.0, b=3.0, delta=0.5, choice=IntervalChoice.CHOICE_1)
        partition = bound_service.index_partition(ts, 1, 2, interval)
        assert partition.a1 == frozenset()
        assert partition.a2 == frozenset({1})
        assert partition.unclassified == frozenset({4})
        assert not partition.satisfies_constraint1
        assert partition.endpoint_ties == frozenset()

    def test_partition_endpoint_tie_fails_constraint1(self):
        ts = TransformedSpectrum(values=np.array([0.0, 1.0, 3.0, 3.0]),
                                 source=PolynomialTransform.identity())
        interval = IntervalTriplet(a=1.0, b=3.0, delta=0.5, choice=IntervalChoice.CHOICE_1)
        partition = bound_service.index_partition(ts, 1, 2, interval)
        assert partition.unclassified == frozenset({4})
        assert partition.endpoint_ties == frozenset({4})

    def test_affine_deltas_match_interval_constructions(self, rng):
        """自然排列的实例上，端点公式与一般区间构造给出相同的 δ"""
        for _ in range(200):
            n = int(rng.integers(2, 9))
            j, r = self.random_block_indices(rng, n)
            phi = self.separated_eigenvalues(rng, n)
            c1 = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 1.5))
            c0 = float(rng.uniform(-0.5, 0.5))
            f = PolynomialTransform.affine(c1, c0)
            ordered = np.sort(c1 * phi + c0)
            gap = np.min(np.diff(ordered)) if n > 1 else 1.0
            psi = ordered + rng.uniform(-0.4, 0.4, size=n) * gap
            j_psi = j if c1 > 0 else n - j - r

            s_phi = self.diagonal_spectrum(phi)
            s_psi = self.diagonal_spectrum(psi)
            deltas = bound_service.affine_deltas(f, s_phi, s_psi, j, r, j_psi=j_psi)
            suffix = 'plus' if c1 > 0 else 'minus'

            ts = transform_service.transform_spectrum(f, s_phi)
            t1 = bound_service.interval_choice1(ts, s_psi, j, r, j_psi=j_psi)
            t2, _ = bound_service.interval_choice2(ts, s_psi, j, r, j_psi=j_psi)
            assert deltas[f'delta_1_{suffix}'] == pytest.approx(t1.delta, abs=1e-12)
            assert deltas[f'delta_2_{suffix}'] == pytest.approx(t2.delta, abs=1e-12)


class TestExtendedBound(BaseTestCase):
    """扩展界测试类"""

    def test_identity_matches_standard_bound(self, diagonal_pair):
        mat_phi, mat_psi = diagonal_pair
        report = bound_service.extended_bound(mat_phi, mat_psi, PolynomialTransform.identity(), 0, 1)
        assert report.delta_used == pytest.approx(1.1)
        assert report.bound_rho1 == report.standard_bound.bound_rho1
        assert report.bound_rho1 == pytest.approx(math.sqrt(2.0) * 0.1 / 1.1, abs=1e-12)
        assert report.rho1_attained == pytest.approx(0.0, abs=1e-12)
        assert report.standard_feasible

    def test_identity_specialization(self, rng):
        for _ in range(100):
            n = int(rng.integers(3, 11))
            r = int(rng.integers(1, n))
            mat_phi = self.matrix_with_spectrum(rng, self.separated_eigenvalues(rng, n))
            mat_psi = mat_phi + self.random_symmetric(rng, n, scale=0.005)
            report = bound_service.extended_bound(mat_phi, mat_psi, PolynomialTransform.identity(), 0, r)
            assert report.standard_bound is not None
            assert report.delta_used == pytest.approx(report.standard_bound.delta, abs=1e-12)
            assert report.bound_rho1 == pytest.approx(report.standard_bound.bound_rho1, abs=1e-12)

    def test_no_valid_interval_carries_report(self, ladder_pair):
        mat_phi, mat_psi = ladder_pair
        with pytest.raises(NoValidInterval) as exc_info:
            bound_service.extended_bound(mat_phi, mat_psi, PolynomialTransform.affine(-1.0, 0.0), 1, 2)
        report = exc_info.value.report
        assert report is not None
        assert report.bound is None
        assert report.failing_constraints == ('choice_1:delta_positive', 'choice_2:constraint_2b')
        assert exc_info.value.details['failing_constraints'] == list(report.failing_constraints)

    def test_evaluate_does_not_raise_when_infeasible(self, ladder_pair):
        mat_phi, mat_psi = ladder_pair
        report = bound_service.evaluate(mat_phi, mat_psi, PolynomialTransform.affine(-1.0, 0.0), 1, 2)
        assert not report.constraints_ok
        assert report.to_dict()['bound'] is None

    def test_gap_violation(self):
        mat = SymMatrix.diagonal([0.0, 1.0, 1.0, 3.0])
        with pytest.raises(GapViolation):
            bound_service.extended_bound(mat, mat, PolynomialTransform.identity(), 1, 1)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            bound_service.extended_bound(SymMatrix.identity(3), SymMatrix.identity(4),
                                         PolynomialTransform.identity(), 0, 1)

    def test_report_dict(self, ladder_pair):
        mat_phi, mat_psi = ladder_pair
        report = bound_service.extended_bound(mat_phi, mat_psi, PolynomialTransform.identity(), 0, 2)
        data = report.to_dict()
        assert data['constraints_ok'] is True
        assert data['bound'] == 0.0
        assert set(data['choices']) == {'1', '2'}
        assert data['choices']['2']['partition']['A1'] == [3, 4]

    def test_bound_dominates_attained_distance(self, rng):
        """相互独立的随机 Φ、Ψ 与随机可行仿射变换下，扩展界不小于实际的 ρ1 与 ρ2"""
        accepted = 0
        shifted_offsets = 0
        instances = 0
        while accepted < VALIDITY_INSTANCES and instances < VALIDITY_MAX_INSTANCES:
            instances += 1
            n = int(rng.integers(3, 11))
            j, r = self.random_block_indices(rng, n)
            j_psi = None
            if n > r and rng.random() < 0.5:
                others = [offset for offset in range(n - r + 1) if offset != j]
                j_psi = int(rng.choice(others))
            mat_phi = self.random_symmetric(rng, n)
            mat_psi = self.random_symmetric(rng, n)
            spectra = _spectra(mat_phi, mat_psi)

            for _ in range(TRANSFORM_TRIES):
                c1 = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 3.0))
                c0 = float(rng.uniform(-3.0, 3.0))
                report = bound_service.evaluate(mat_phi, mat_psi, PolynomialTransform.affine(c1, c0),
                                                j, r, j_psi=j_psi, spectra=spectra)
                if report.constraints_ok:
                    break
            else:
                continue

            accepted += 1
            shifted_offsets += report.j_psi != j
            assert report.rho2_attained <= report.bound_rho2 + 1e-8
            assert report.rho1_attained <= report.bound_rho1 + 1e-8

        assert accepted == VALIDITY_INSTANCES
        assert shifted_offsets > 0
