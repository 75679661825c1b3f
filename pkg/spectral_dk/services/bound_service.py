"""
DK 界服务层

提供特征间隙假设检查、首 r 个特征向量的标准界、两种 DK 区间构造、
Constraints 1 / 2A / 2B 判定、仿射变换的 δ 公式以及扩展界报告
"""

import logging
from typing import Dict, Optional, Tuple, Type

import numpy as np

from spectral_dk.core.config_manager import config_manager
from spectral_dk.core.constants import IntervalChoice, NormKind
from spectral_dk.core.exceptions import GapViolation, NoValidInterval, ShapeError
from spectral_dk.core.utils import one_based
from spectral_dk.core.validators import ChoiceValidator, validate_block_indices
from spectral_dk.models.bounds import (
    BoundReport,
    ChoiceBatch,
    IndexPartition,
    IntervalTriplet,
    StandardBound,
)
from spectral_dk.models.matrix import Spectrum, SymMatrix
from spectral_dk.models.transform import PolynomialTransform, TransformedSpectrum
from spectral_dk.services.linalg_service import linalg_service
from spectral_dk.services.subspace_service import subspace_service
from spectral_dk.services.transform_service import transform_service

logger = logging.getLogger(__name__)

_norm_validator = ChoiceValidator(NormKind)


def _excluded_indices(n: int, j: int, r: int) -> np.ndarray:
    """{1,…,n} \\ {j+1,…,j+r} 的 0 基索引"""
    return np.concatenate((np.arange(0, j), np.arange(j + r, n)))


class BoundService:
    """DK 界服务类"""

    def __init__(self, settings: Optional[Type] = None):
        self.settings = settings

    def _get_settings(self) -> Type:
        """获取配置"""
        if self.settings is not None:
            return self.settings
        return config_manager.settings

    @staticmethod
    def resolve_offsets(n_phi: int, n_psi: int, j: int, r: int, j_psi: Optional[int]) -> int:
        """检查两个谱维数一致以及 Φ 侧偏移 j、Ψ 侧偏移 j_psi 合法，返回 j_psi"""
        if n_phi != n_psi:
            logger.error(f"两个矩阵维数不一致: {n_phi} vs {n_psi}")
            raise ShapeError(f"两个矩阵维数不一致: {n_phi} vs {n_psi}",
                             details={'n_phi': n_phi, 'n_psi': n_psi})
        validate_block_indices(n_phi, j, r)
        j_psi = j if j_psi is None else j_psi
        validate_block_indices(n_psi, j_psi, r)
        return int(j_psi)

    # ============================================================================
    # 特征间隙假设
    # ============================================================================

    def check_gap_assumption(self, s_phi: Spectrum, s_psi: Spectrum, j: int, r: int,
                             tol: Optional[float] = None, j_psi: Optional[int] = None) -> bool:
        """
        检查第 j 与第 j+r 个特征间隙在两个谱中均严格大于 tol

        Args:
            s_phi: Φ 的谱
            s_psi: Ψ 的谱
            j: Φ 侧块偏移
            r: 块宽度
            tol: 间隙容差，默认取 GAP_TOLERANCE
            j_psi: Ψ 侧块偏移，默认等于 j

        Returns:
            bool: 四个间隙是否全部大于 tol
        """
        return not self._gap_failures(s_phi, s_psi, j, r, tol, j_psi)

    def _gap_failures(self, s_phi, s_psi, j, r, tol, j_psi):
        j_psi = self.resolve_offsets(s_phi.n, s_psi.n, j, r, j_psi)
        if tol is None:
            tol = self._get_settings().GAP_TOLERANCE
        phi = s_phi.extended_eigenvalues()
        psi = s_psi.extended_eigenvalues()
        gaps = {
            f'phi_{j}': phi[j + 1] - phi[j],
            f'phi_{j + r}': phi[j + r + 1] - phi[j + r],
            f'psi_{j_psi}': psi[j_psi + 1] - psi[j_psi],
            f'psi_{j_psi + r}': psi[j_psi + r + 1] - psi[j_psi + r],
        }
        return {name: float(gap) for name, gap in gaps.items() if not gap > tol}

    def require_gap_assumption(self, s_phi: Spectrum, s_psi: Spectrum, j: int, r: int,
                               tol: Optional[float] = None, j_psi: Optional[int] = None) -> None:
        """间隙假设不成立时抛出 GapViolation"""
        failures = self._gap_failures(s_phi, s_psi, j, r, tol, j_psi)
        if failures:
            logger.error(f"特征间隙假设不成立 (j={j}, r={r}): {failures}")
            raise GapViolation(f"特征间隙假设不成立: {', '.join(sorted(failures))}",
                               details={'gaps': failures, 'j': j, 'r': r})

    # ============================================================================
    # 首 r 个特征向量的标准界
    # ============================================================================

    def theorem4_bound(self, s_phi: Spectrum, s_psi: Spectrum, mat_phi: SymMatrix,
                       mat_psi: SymMatrix, r: int) -> StandardBound:
        """
        首 r 个特征向量的标准 DK 界，分母为矩阵间特征间隙 max(φ_{r+1} − ψ_r, ψ_{r+1} − φ_r)

        Args:
            s_phi: Φ 的谱
            s_psi: Ψ 的谱
            mat_phi: Φ
            mat_psi: Ψ
            r: 块宽度

        Returns:
            StandardBound: ρ1 与 ρ2 两种界、δ 与分子 ‖Φ − Ψ‖₂
        """
        self.require_gap_assumption(s_phi, s_psi, 0, r)
        phi = s_phi.extended_eigenvalues()
        psi = s_psi.extended_eigenvalues()
        delta = float(max(phi[r + 1] - psi[r], psi[r + 1] - phi[r]))
        if not delta > 0:
            raise GapViolation(f"矩阵间特征间隙不为正: {delta}", details={'delta': delta})

        numerator = linalg_service.spectral_norm(mat_phi - mat_psi)
        c_factor = subspace_service.c_factor(s_phi.n, r)
        bound_rho2 = 0.0 if numerator == 0.0 else numerator / delta
        bound_rho1 = c_factor * bound_rho2
        logger.debug(f"标准界: r={r}, δ={delta:.6g}, ‖Φ−Ψ‖₂={numerator:.6g}, ρ1 界={bound_rho1:.6g}")
        return StandardBound(bound_rho1=bound_rho1, bound_rho2=bound_rho2, delta=delta,
                             numerator=numerator, c_factor=c_factor)

    # ============================================================================
    # 区间构造与约束判定
    # ============================================================================

    def analyze_values(self, rows: np.ndarray, psi_extended: np.ndarray, j: int, j_psi: int,
                       r: int) -> Dict[IntervalChoice, ChoiceBatch]:
        """
        对 k 组变换后的 Φ 特征值同时计算两种区间选择及其约束

        Args:
            rows: k×n 数组，每行是一组按原始索引排列的 p(φᵢ)
            psi_extended: [−∞, ψ₁, …, ψₙ, +∞]
            j: Φ 侧块偏移
            j_psi: Ψ 侧块偏移
            r: 块宽度

        Returns:
            dict: 区间选择 → ChoiceBatch
        """
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        k, n = rows.shape
        inner = rows[:, j:j + r]
        excluded = rows[:, _excluded_indices(n, j, r)]
        inner_min = inner.min(axis=1)
        inner_max = inner.max(axis=1)
        psi_below = psi_extended[j_psi]
        psi_first = psi_extended[j_psi + 1]
        psi_last = psi_extended[j_psi + r]
        psi_above = psi_extended[j_psi + r + 1]
        lower_open = j_psi == 0
        upper_open = j_psi + r == n

        def batch(choice, a, b, delta, lower_gap, upper_gap):
            above = excluded > b[:, None]
            below = excluded < a[:, None]
            separation = np.min(np.maximum(excluded - b[:, None], a[:, None] - excluded),
                                axis=1, initial=np.inf)
            return ChoiceBatch(
                choice=choice, a=a, b=b, delta=delta,
                lower_gap=lower_gap, upper_gap=upper_gap,
                lower_waived=lower_open & ~below.any(axis=1),
                upper_waived=upper_open & ~above.any(axis=1),
                constraint_1=(above | below).all(axis=1),
                separation=separation,
            )

        # 选择 1：S₁ 由变换后的 Φ 块内值张成
        a1, b1 = inner_min, inner_max
        delta1 = np.minimum(psi_above - b1, a1 - psi_below)
        choice1 = batch(IntervalChoice.CHOICE_1, a1, b1, delta1, a1 - psi_first, psi_last - b1)

        # 选择 2：S₁ = [ψ_{j+1}, ψ_{j+r}]
        a2 = np.full(k, psi_first)
        b2 = np.full(k, psi_last)
        min_a1 = np.min(np.where(excluded > b2[:, None], excluded, np.inf), axis=1, initial=np.inf)
        max_a2 = np.max(np.where(excluded < a2[:, None], excluded, -np.inf), axis=1, initial=-np.inf)
        delta2 = np.minimum(min_a1 - b2, a2 - max_a2)
        choice2 = batch(IntervalChoice.CHOICE_2, a2, b2, delta2, a2 - inner_min, inner_max - b2)

        return {IntervalChoice.CHOICE_1: choice1, IntervalChoice.CHOICE_2: choice2}

    def index_partition(self, ts: TransformedSpectrum, j: int, r: int,
                        interval: IntervalTriplet) -> IndexPartition:
        """按 p(φᵢ) > b 与 p(φᵢ) < a 划分被排除的索引"""
        validate_block_indices(ts.n, j, r)
        excluded = _excluded_indices(ts.n, j, r)
        values = ts.values[excluded]
        above = excluded[values > interval.b]
        below = excluded[values < interval.a]
        inside = ~((values > interval.b) | (values < interval.a))
        ties = inside & ((values == interval.a) | (values == interval.b))
        return IndexPartition(
            a1=frozenset(one_based(above)),
            a2=frozenset(one_based(below)),
            unclassified=frozenset(one_based(excluded[inside])),
            endpoint_ties=frozenset(one_based(excluded[ties])),
        )

    def _single(self, ts: TransformedSpectrum, s_psi: Spectrum, j: int, r: int,
                j_psi: Optional[int]) -> Dict[IntervalChoice, ChoiceBatch]:
        j_psi = self.resolve_offsets(ts.n, s_psi.n, j, r, j_psi)
        return self.analyze_values(ts.values[None, :], s_psi.extended_eigenvalues(), j, j_psi, r)

    def interval_choice1(self, ts: TransformedSpectrum, s_psi: Spectrum, j: int, r: int,
                         j_psi: Optional[int] = None) -> IntervalTriplet:
        """a₁、b₁ 为块内变换值的最小、最大值，δ₁ = min(ψ_{j+r+1} − b₁, a₁ − ψ_j)"""
        return self._single(ts, s_psi, j, r, j_psi)[IntervalChoice.CHOICE_1].triplet()

    def interval_choice2(self, ts: TransformedSpectrum, s_psi: Spectrum, j: int, r: int,
                         j_psi: Optional[int] = None) -> Tuple[IntervalTriplet, IndexPartition]:
        """a₂ = ψ_{j+1}，b₂ = ψ_{j+r}，δ₂ = min(min_{A1} p(φᵢ) − b₂, a₂ − max_{A2} p(φᵢ))"""
        triplet = self._single(ts, s_psi, j, r, j_psi)[IntervalChoice.CHOICE_2].triplet()
        return triplet, self.index_partition(ts, j, r, triplet)

    def _constraint2_holds(self, ts: TransformedSpectrum, s_psi: Spectrum, j: int, r: int,
                           triplet: IntervalTriplet, j_psi: Optional[int]) -> bool:
        j_psi = self.resolve_offsets(ts.n, s_psi.n, j, r, j_psi)
        inner = ts.values[j:j + r]
        if triplet.choice == IntervalChoice.CHOICE_1:
            lower_gap = triplet.a - s_psi.eigenvalue(j_psi + 1)
            upper_gap = s_psi.eigenvalue(j_psi + r) - triplet.b
        else:
            lower_gap = triplet.a - float(inner.min())
            upper_gap = float(inner.max()) - triplet.b

        partition = self.index_partition(ts, j, r, triplet)
        lower_ok = (j_psi == 0 and not partition.a2) or lower_gap < triplet.delta
        upper_ok = (j_psi + r == ts.n and not partition.a1) or upper_gap < triplet.delta
        return triplet.delta > 0 and lower_ok and upper_ok

    def check_constraints2A(self, ts: TransformedSpectrum, s_psi: Spectrum, j: int, r: int,
                            t1: IntervalTriplet, j_psi: Optional[int] = None) -> bool:
        """δ₁ > 0、a₁ − ψ_{j+1} < δ₁、ψ_{j+r} − b₁ < δ₁（严格比较）"""
        return self._constraint2_holds(ts, s_psi, j, r, t1, j_psi)

    def check_constraints2B(self, ts: TransformedSpectrum, s_psi: Spectrum, j: int, r: int,
                            t2: IntervalTriplet, j_psi: Optional[int] = None) -> bool:
        """δ₂ > 0、a₂ − min 块内 p(φᵢ) < δ₂、max 块内 p(φᵢ) − b₂ < δ₂（严格比较）"""
        return self._constraint2_holds(ts, s_psi, j, r, t2, j_psi)

    def affine_deltas(self, f: PolynomialTransform, s_phi: Spectrum, s_psi: Spectrum, j: int,
                      r: int, j_psi: Optional[int] = None) -> Dict[str, float]:
        """
        仿射变换下两种区间选择的 δ，直接由端点公式给出

        Args:
            f: 仿射变换，c₁ ≠ 0
            s_phi: Φ 的谱
            s_psi: Ψ 的谱
            j: Φ 侧块偏移
            r: 块宽度
            j_psi: Ψ 侧块偏移

        Returns:
            dict: c₁ > 0 时为 {'delta_1_plus', 'delta_2_plus'}，c₁ < 0 时为 {'delta_1_minus', 'delta_2_minus'}
        """
        max_a2, inner_min, inner_max, min_a1 = transform_service.affine_endpoints(f, s_phi, j, r)
        j_psi = self.resolve_offsets(s_phi.n, s_psi.n, j, r, j_psi)
        psi = s_psi.extended_eigenvalues()
        delta1 = float(min(psi[j_psi + r + 1] - inner_max, inner_min - psi[j_psi]))
        delta2 = float(min(min_a1 - psi[j_psi + r], psi[j_psi + 1] - max_a2))
        suffix = 'plus' if f.c1 > 0 else 'minus'
        return {f'delta_1_{suffix}': delta1, f'delta_2_{suffix}': delta2}

    # ============================================================================
    # 扩展界
    # ============================================================================

    def evaluate(self, mat_phi: SymMatrix, mat_psi: SymMatrix, p: PolynomialTransform, j: int,
                 r: int, j_psi: Optional[int] = None, norm_kind=NormKind.RHO1,
                 spectra: Optional[Tuple[Spectrum, Spectrum]] = None,
                 numerator: Optional[float] = None) -> BoundReport:
        """
        计算扩展界报告；两种区间选择都无效时界为 None（不抛出 NoValidInterval）

        Args:
            mat_phi: Φ
            mat_psi: Ψ
            p: 多项式变换
            j: Φ 侧块偏移
            r: 块宽度
            j_psi: Ψ 侧块偏移，默认等于 j
            norm_kind: 报告主界使用的距离
            spectra: 可选的预先计算的 (Φ 谱, Ψ 谱)
            numerator: 可选的预先计算的 ‖p(Φ) − Ψ‖₂

        Returns:
            BoundReport: 扩展界报告
        """
        norm_kind = _norm_validator.validate(norm_kind, "距离类型")
        j_psi = self.resolve_offsets(mat_phi.n, mat_psi.n, j, r, j_psi)
        if spectra is None:
            spectra = (linalg_service.eig_sym(mat_phi), linalg_service.eig_sym(mat_psi))
        s_phi, s_psi = spectra
        self.require_gap_assumption(s_phi, s_psi, j, r, j_psi=j_psi)

        ts = transform_service.transform_spectrum(p, s_phi)
        batches = self.analyze_values(ts.values[None, :], s_psi.extended_eigenvalues(), j, j_psi, r)
        intervals = {choice: batch.triplet() for choice, batch in batches.items()}
        flags = {choice: batch.flags() for choice, batch in batches.items()}
        partitions = {choice: self.index_partition(ts, j, r, intervals[choice])
                      for choice in IntervalChoice}

        if numerator is None:
            numerator = linalg_service.spectral_norm(transform_service.eval_matrix(p, mat_phi) - mat_psi)
        numerator = float(numerator)
        c_factor = subspace_service.c_factor(s_phi.n, r)
        w = s_phi.block(j, r)
        v = s_psi.block(j_psi, r)

        valid = [choice for choice in IntervalChoice if flags[choice].ok]
        interval = delta_used = bound_rho2 = bound_rho1 = None
        if valid:
            # δ 相同时取选择 1
            chosen = max(valid, key=lambda choice: (intervals[choice].delta, -choice.value))
            interval = intervals[chosen]
            delta_used = interval.delta
            bound_rho2 = numerator / delta_used
            bound_rho1 = c_factor * bound_rho2

        failing = tuple(f"choice_{choice.value}:{flags[choice].first_failure.value}"
                        for choice in IntervalChoice if not flags[choice].ok)
        fragile = self._fragile_margins(flags, partitions, valid)

        standard_bound = None
        if j == 0 and j_psi == 0:
            standard_bound = self.theorem4_bound(s_phi, s_psi, mat_phi, mat_psi, r)
        standard_feasible = self._identity_feasible(s_phi, s_psi, j, j_psi, r)

        report = BoundReport(
            n=s_phi.n, j=j, j_psi=j_psi, r=r, transform=p, norm_kind=norm_kind,
            rho1_attained=subspace_service.rho1(w, v),
            rho2_attained=subspace_service.rho2(w, v),
            numerator=numerator, c_factor=c_factor,
            intervals=intervals, partitions=partitions, flags=flags,
            interval=interval, delta_used=delta_used,
            bound_rho2=bound_rho2, bound_rho1=bound_rho1,
            standard_bound=standard_bound, standard_feasible=standard_feasible,
            failing_constraints=failing, fragile_margins=fragile,
        )
        logger.debug(f"扩展界: p={p}, j={j}, j_psi={j_psi}, r={r}, 有效选择={[c.value for c in valid]}, "
                     f"界={report.bound}")
        return report

    def extended_bound(self, mat_phi: SymMatrix, mat_psi: SymMatrix, p: PolynomialTransform, j: int,
                       r: int, norm_kind=NormKind.RHO1, j_psi: Optional[int] = None,
                       spectra: Optional[Tuple[Spectrum, Spectrum]] = None) -> BoundReport:
        """
        扩展 DK 界：保留所有约束成立的区间选择，取最大的 δ

        Raises:
            GapViolation: 原始谱不满足间隙假设
            NoValidInterval: 两种区间选择均不满足约束（异常携带报告）
        """
        report = self.evaluate(mat_phi, mat_psi, p, j, r, j_psi=j_psi, norm_kind=norm_kind,
                               spectra=spectra)
        if not report.constraints_ok:
            logger.error(f"不存在有效的 DK 区间: {', '.join(report.failing_constraints)}")
            raise NoValidInterval(details={'failing_constraints': list(report.failing_constraints)},
                                  report=report)
        logger.info(f"扩展界计算完成: ρ1 界={report.bound_rho1:.6g}, 实际 ρ1={report.rho1_attained:.6g}")
        return report

    def standard_requirements_feasible(self, s_phi: Spectrum, s_psi: Spectrum, j: int, r: int,
                                       j_psi: Optional[int] = None) -> bool:
        """恒等变换下是否存在满足要求的 DK 区间"""
        j_psi = self.resolve_offsets(s_phi.n, s_psi.n, j, r, j_psi)
        if not self.check_gap_assumption(s_phi, s_psi, j, r, j_psi=j_psi):
            return False
        return self._identity_feasible(s_phi, s_psi, j, j_psi, r)

    def _identity_feasible(self, s_phi: Spectrum, s_psi: Spectrum, j: int, j_psi: int, r: int) -> bool:
        batches = self.analyze_values(s_phi.eigenvalues[None, :], s_psi.extended_eigenvalues(),
                                      j, j_psi, r)
        return any(bool(batch.ok[0]) for batch in batches.values())

    def _fragile_margins(self, flags, partitions, valid) -> Tuple[str, ...]:
        """有效选择中小于 FRAGILE_MARGIN 的正裕量，以及落在区间端点上的变换值"""
        threshold = self._get_settings().FRAGILE_MARGIN
        notes = []
        for choice in valid:
            for name, margin in flags[choice].margins.items():
                if 0 < margin < threshold:
                    notes.append(f"choice_{choice.value}:{name}={margin:.3e}")
        for choice in IntervalChoice:
            ties = partitions[choice].endpoint_ties
            if ties:
                notes.append(f"choice_{choice.value}:endpoint_tie={sorted(ties)}")
        if notes:
            logger.warning(f"约束裕量接近数值精度: {'; '.join(notes)}")
        return tuple(notes)


# 创建全局 DK 界服务实例
bound_service = BoundService()
