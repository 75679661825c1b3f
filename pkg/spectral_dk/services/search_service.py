"""
仿射变换搜索服务层

在 (c₁, c₀) 网格上最小化扩展界：两种区间选择分别求最优，逐轮围绕各自最优点收缩细化，
另外以 Frobenius 最小二乘拟合作为候选点
"""

import logging
from typing import Dict, Iterable, List, Optional, Tuple, Type

import numpy as np

from spectral_dk.core.config_manager import config_manager
from spectral_dk.core.constants import ConstraintName, IntervalChoice, NormKind
from spectral_dk.core.decorators import log_execution_time
from spectral_dk.core.exceptions import NoFeasibleTransform
from spectral_dk.core.validators import ChoiceValidator
from spectral_dk.models.matrix import Spectrum, SymMatrix
from spectral_dk.models.search import ChoiceOptimum, LandscapeCell, SearchConfig, SearchResult
from spectral_dk.models.transform import PolynomialTransform
from spectral_dk.services.bound_service import bound_service
from spectral_dk.services.linalg_service import linalg_service
from spectral_dk.services.subspace_service import subspace_service

logger = logging.getLogger(__name__)

_norm_validator = ChoiceValidator(NormKind)


def _axis(center: float, half_width: float, points: int) -> np.ndarray:
    """以 center 为中心的等距网格，偏移 (2i − (k−1))/(k−1) 使奇数点数时中心精确落在网格上"""
    steps = (2.0 * np.arange(points) - (points - 1)) / (points - 1)
    return center + half_width * steps


def _tie_key(bound: float, c1: float, c0: float) -> Tuple[float, float, float, float, float]:
    """界相同时优先 |c₀| 小、再 |c₁ − 1| 小，最后按数值排序保证结果与求值顺序无关"""
    return bound, abs(c0), abs(c1 - 1.0), c1, c0


class _AffineObjective:
    """固定 (Φ, Ψ, j, j_psi, r) 的仿射目标函数，缓存每个 c₁ 的 c₁Φ − Ψ 端点特征值"""

    def __init__(self, mat_phi: SymMatrix, mat_psi: SymMatrix, spectra: Tuple[Spectrum, Spectrum],
                 j: int, j_psi: int, r: int, norm_kind: NormKind):
        self.phi = mat_phi.entries
        self.psi = mat_psi.entries
        self.s_phi, self.s_psi = spectra
        self.psi_extended = self.s_psi.extended_eigenvalues()
        self.j, self.j_psi, self.r = j, j_psi, r
        scale = subspace_service.c_factor(self.s_phi.n, r) if norm_kind == NormKind.RHO1 else 1.0
        self.scale = scale
        self._extremes: Dict[float, Tuple[float, float]] = {}
        self.points: Dict[Tuple[float, float], Dict] = {}

    def extremes(self, c1: float) -> Tuple[float, float]:
        """c₁Φ − Ψ 的最小、最大特征值；‖c₁Φ + c₀I − Ψ‖₂ = max(|λ_max + c₀|, |λ_min + c₀|)"""
        if c1 not in self._extremes:
            eigenvalues = linalg_service.eigenvalues(c1 * self.phi - self.psi)
            self._extremes[c1] = (float(eigenvalues[0]), float(eigenvalues[-1]))
        return self._extremes[c1]

    def evaluate_row(self, c1: float, c0_values: np.ndarray) -> List[Dict]:
        """对固定 c₁ 的一组 c₀ 批量求值"""
        c0_values = np.asarray(c0_values, dtype=float)
        rows = c1 * self.s_phi.eigenvalues[None, :] + c0_values[:, None]
        batches = bound_service.analyze_values(rows, self.psi_extended, self.j, self.j_psi, self.r)
        low, high = self.extremes(c1)
        numerators = np.maximum(np.abs(high + c0_values), np.abs(low + c0_values))

        results = []
        for i, c0 in enumerate(c0_values):
            key = (float(c1), float(c0))
            if key in self.points:
                results.append(self.points[key])
                continue
            numerator = float(numerators[i])
            per_choice = {}
            failures = {}
            for choice, batch in batches.items():
                if batch.ok[i]:
                    delta = float(batch.delta[i])
                    per_choice[choice] = (self.scale * (numerator / delta), delta)
                else:
                    failures[choice] = batch.flags(i).first_failure.value
            point = {'c1': key[0], 'c0': key[1], 'numerator': numerator,
                     'per_choice': per_choice, 'failures': failures}
            self.points[key] = point
            results.append(point)
        return results

    @property
    def evaluations(self) -> int:
        return len(self.points)


class SearchService:
    """仿射搜索服务类"""

    def __init__(self, settings: Optional[Type] = None):
        self.settings = settings

    def _get_settings(self) -> Type:
        """获取配置"""
        if self.settings is not None:
            return self.settings
        return config_manager.settings

    # ============================================================================
    # 搜索配置
    # ============================================================================

    def default_config(self, mat_phi: SymMatrix, mat_psi: SymMatrix) -> SearchConfig:
        """
        默认搜索范围：c₁ ∈ ±2·‖Ψ‖₂/‖Φ‖₂，c₀ ∈ ±‖Ψ‖₂

        Args:
            mat_phi: Φ
            mat_psi: Ψ

        Returns:
            SearchConfig: 使用当前配置中的网格点数、细化轮数与零带宽
        """
        settings = self._get_settings()
        norm_phi = linalg_service.spectral_norm(mat_phi)
        norm_psi = linalg_service.spectral_norm(mat_psi)
        ratio = norm_psi / norm_phi if norm_phi > 0 else 1.0
        if ratio == 0.0:
            ratio = 1.0
        span = 2.0 * ratio
        c0_span = norm_psi if norm_psi > 0 else 1.0
        return SearchConfig(
            c1_range=(-span, span),
            c0_range=(-c0_span, c0_span),
            grid_points=settings.SEARCH_GRID_POINTS,
            refinement_rounds=settings.SEARCH_REFINEMENT_ROUNDS,
            exclude_zero_band=settings.SEARCH_ZERO_BAND,
            shrink_factor=settings.SEARCH_SHRINK_FACTOR,
        )

    def _prepare(self, mat_phi, mat_psi, j, r, j_psi, cfg, norm_kind):
        norm_kind = _norm_validator.validate(norm_kind, "距离类型")
        j_psi = bound_service.resolve_offsets(mat_phi.n, mat_psi.n, j, r, j_psi)
        spectra = (linalg_service.eig_sym(mat_phi), linalg_service.eig_sym(mat_psi))
        bound_service.require_gap_assumption(spectra[0], spectra[1], j, r, j_psi=j_psi)
        cfg = cfg or self.default_config(mat_phi, mat_psi)
        objective = _AffineObjective(mat_phi, mat_psi, spectra, j, j_psi, r, norm_kind)
        return objective, cfg, spectra, j_psi, norm_kind

    # ============================================================================
    # 网格求值
    # ============================================================================

    @staticmethod
    def _grid(c1_center: float, c1_half: float, c0_center: float, c0_half: float,
              cfg: SearchConfig) -> Tuple[np.ndarray, np.ndarray]:
        c1_axis = _axis(c1_center, c1_half, cfg.grid_points)
        c0_axis = _axis(c0_center, c0_half, cfg.grid_points)
        return c1_axis[np.abs(c1_axis) >= cfg.exclude_zero_band], c0_axis

    @staticmethod
    def _least_squares_seed(mat_phi: SymMatrix, mat_psi: SymMatrix) -> Tuple[float, float]:
        """argmin ‖c₁Φ + c₀I − Ψ‖_F"""
        n = mat_phi.n
        design = np.column_stack((mat_phi.entries.ravel(), np.eye(n).ravel()))
        solution, *_ = np.linalg.lstsq(design, mat_psi.entries.ravel(), rcond=None)
        return float(solution[0]), float(solution[1])

    def _evaluate_points(self, objective: _AffineObjective, c1_values: Iterable[float],
                         c0_values: np.ndarray, incumbents: Dict[IntervalChoice, Optional[Dict]]):
        for c1 in c1_values:
            for point in objective.evaluate_row(float(c1), c0_values):
                for choice, (bound, delta) in point['per_choice'].items():
                    key = _tie_key(bound, point['c1'], point['c0'])
                    current = incumbents[choice]
                    if current is None or key < current['key']:
                        incumbents[choice] = {'key': key, 'c1': point['c1'], 'c0': point['c0'],
                                              'bound': bound, 'delta': delta,
                                              'numerator': point['numerator']}

    @staticmethod
    def _overall(incumbents: Dict[IntervalChoice, Optional[Dict]]) -> Optional[Dict]:
        found = [value for value in incumbents.values() if value is not None]
        return min(found, key=lambda value: value['key']) if found else None

    # ============================================================================
    # 仿射搜索
    # ============================================================================

    @log_execution_time
    def search_affine(self, mat_phi: SymMatrix, mat_psi: SymMatrix, j: int, r: int,
                      cfg: Optional[SearchConfig] = None, j_psi: Optional[int] = None,
                      norm_kind=NormKind.RHO1) -> SearchResult:
        """
        在 (c₁, c₀) 网格上搜索使扩展界最小的仿射变换

        Args:
            mat_phi: Φ
            mat_psi: Ψ
            j: Φ 侧块偏移
            r: 块宽度
            cfg: 搜索配置，默认由 default_config 生成
            j_psi: Ψ 侧块偏移，默认等于 j
            norm_kind: 最小化的界类型

        Returns:
            SearchResult: 两种区间选择各自的最优点以及整体最优报告
        """
        objective, cfg, spectra, j_psi, norm_kind = self._prepare(
            mat_phi, mat_psi, j, r, j_psi, cfg, norm_kind)
        incumbents: Dict[IntervalChoice, Optional[Dict]] = {choice: None for choice in IntervalChoice}

        c1_center = (cfg.c1_range[0] + cfg.c1_range[1]) / 2.0
        c1_half = (cfg.c1_range[1] - cfg.c1_range[0]) / 2.0
        c0_center = (cfg.c0_range[0] + cfg.c0_range[1]) / 2.0
        c0_half = (cfg.c0_range[1] - cfg.c0_range[0]) / 2.0
        c1_axis, c0_axis = self._grid(c1_center, c1_half, c0_center, c0_half, cfg)
        self._evaluate_points(objective, c1_axis, c0_axis, incumbents)

        if cfg.least_squares_seed:
            seed_c1, seed_c0 = self._least_squares_seed(mat_phi, mat_psi)
            if abs(seed_c1) >= cfg.exclude_zero_band:
                logger.debug(f"最小二乘初值: c1={seed_c1:.10g}, c0={seed_c0:.10g}")
                self._evaluate_points(objective, [seed_c1], np.array([seed_c0]), incumbents)
        if cfg.identity_seed:
            # 恒等变换可行时，最优界不超过恒等变换的界
            self._evaluate_points(objective, [1.0], np.array([0.0]), incumbents)

        best = self._overall(incumbents)
        history = [best['bound'] if best else float('inf')]

        for round_index in range(1, cfg.refinement_rounds + 1):
            shrink = cfg.shrink_factor ** round_index
            for choice in IntervalChoice:
                incumbent = incumbents[choice]
                if incumbent is None:
                    continue
                c1_values, c0_values = self._grid(incumbent['c1'], c1_half / shrink,
                                                  incumbent['c0'], c0_half / shrink, cfg)
                self._evaluate_points(objective, c1_values, c0_values, incumbents)
            best = self._overall(incumbents)
            history.append(best['bound'] if best else float('inf'))
            logger.debug(f"第 {round_index} 轮细化后最优界: {history[-1]:.6g}")

        if best is None:
            logger.error(f"网格上没有可行的仿射变换 (共 {objective.evaluations} 个点)")
            raise NoFeasibleTransform(details={'evaluations': objective.evaluations, 'j': j, 'r': r})

        best_transform = PolynomialTransform.affine(best['c1'], best['c0'])
        best_report = bound_service.evaluate(mat_phi, mat_psi, best_transform, j, r, j_psi=j_psi,
                                             norm_kind=norm_kind, spectra=spectra,
                                             numerator=best['numerator'])
        per_choice_best = {
            choice: ChoiceOptimum(choice=choice,
                                  transform=PolynomialTransform.affine(value['c1'], value['c0']),
                                  bound=value['bound'], delta=value['delta']) if value else None
            for choice, value in incumbents.items()
        }
        logger.info(f"仿射搜索完成: c1={best['c1']:.10g}, c0={best['c0']:.10g}, "
                    f"界={best_report.bound:.6g}, 求值 {objective.evaluations} 次")
        return SearchResult(best_transform=best_transform, best_report=best_report,
                            per_choice_best=per_choice_best, evaluations=objective.evaluations,
                            history=history)

    def bound_landscape(self, mat_phi: SymMatrix, mat_psi: SymMatrix, j: int, r: int,
                        cfg: Optional[SearchConfig] = None, j_psi: Optional[int] = None,
                        norm_kind=NormKind.RHO1) -> List[LandscapeCell]:
        """
        不做细化的完整网格求值，不可行点标注失败的约束

        Returns:
            list: 按 (c₁, c₀) 排列的网格单元；c₁ 落在零带内的单元标注为退化变换
        """
        objective, cfg, _, _, _ = self._prepare(mat_phi, mat_psi, j, r, j_psi, cfg, norm_kind)
        c1_axis = _axis((cfg.c1_range[0] + cfg.c1_range[1]) / 2.0,
                        (cfg.c1_range[1] - cfg.c1_range[0]) / 2.0, cfg.grid_points)
        c0_axis = _axis((cfg.c0_range[0] + cfg.c0_range[1]) / 2.0,
                        (cfg.c0_range[1] - cfg.c0_range[0]) / 2.0, cfg.grid_points)

        cells = []
        for c1 in c1_axis:
            if abs(c1) < cfg.exclude_zero_band:
                cells.extend(LandscapeCell(c1=float(c1), c0=float(c0), bound=None, feasible=False,
                                           failed_constraint=ConstraintName.DEGENERATE.value)
                             for c0 in c0_axis)
                continue
            for point in objective.evaluate_row(float(c1), c0_axis):
                if point['per_choice']:
                    bound = min(value[0] for value in point['per_choice'].values())
                    cells.append(LandscapeCell(c1=point['c1'], c0=point['c0'], bound=bound, feasible=True))
                else:
                    failed = ",".join(f"choice_{choice.value}:{name}"
                                      for choice, name in sorted(point['failures'].items(),
                                                                 key=lambda item: item[0].value))
                    cells.append(LandscapeCell(c1=point['c1'], c0=point['c0'], bound=None,
                                               feasible=False, failed_constraint=failed))
        feasible = sum(cell.feasible for cell in cells)
        logger.info(f"界景观计算完成: {len(cells)} 个网格点，其中 {feasible} 个可行")
        return cells


# 创建全局仿射搜索服务实例
search_service = SearchService()
