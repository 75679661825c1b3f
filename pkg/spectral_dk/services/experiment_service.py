"""
d-正则图实验服务层

对每个随机 d-正则图比较 L 与 L_sym 的前 r 个特征向量：
实际 ρ1、首 r 个特征向量的标准界，以及仿射搜索得到的扩展界
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Type

import numpy as np
import pandas as pd

from spectral_dk.core.config_manager import config_manager
from spectral_dk.core.constants import ReportSchema
from spectral_dk.core.decorators import log_execution_time
from spectral_dk.core.exceptions import GapViolation, GenerationFailed, NoFeasibleTransform, SpectralDKError
from spectral_dk.core.utils import spawn_rngs
from spectral_dk.models.experiment import ExperimentSpec, ReportRecord
from spectral_dk.services.bound_service import bound_service
from spectral_dk.services.graph_service import graph_service
from spectral_dk.services.io_service import io_service
from spectral_dk.services.linalg_service import linalg_service
from spectral_dk.services.search_service import search_service
from spectral_dk.services.subspace_service import subspace_service

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExperimentResult:
    """实验结果：按重复编号排序的记录与汇总"""

    spec: ExperimentSpec
    records: List[ReportRecord]

    def frame(self) -> pd.DataFrame:
        return io_service.frame((record.to_row() for record in self.records), ReportSchema.CSV_COLUMNS)

    def summary(self) -> Dict[str, Any]:
        """每列的 min / max / mean 以及可行性计数"""
        return {
            'spec': self.spec.to_dict(),
            'replicates': len(self.records),
            'thm4_feasible': sum(record.thm4_feasible for record in self.records),
            'ext_feasible': sum(record.ext_feasible for record in self.records),
            'columns': io_service.column_summary(self.frame(), ReportSchema.CSV_COLUMNS[1:]),
            'records': [record.to_dict() for record in self.records],
        }


class ExperimentService:
    """d-正则图实验服务类"""

    def __init__(self, settings: Optional[Type] = None):
        self.settings = settings

    def _get_settings(self) -> Type:
        """获取配置"""
        if self.settings is not None:
            return self.settings
        return config_manager.settings

    def default_spec(self, **overrides) -> ExperimentSpec:
        """由当前配置生成实验参数，overrides 中非 None 的项覆盖配置值"""
        settings = self._get_settings()
        values = {
            'n': settings.EXPERIMENT_N,
            'd': settings.EXPERIMENT_D,
            'replicates': settings.EXPERIMENT_REPLICATES,
            'r': settings.EXPERIMENT_R,
            'j': settings.EXPERIMENT_J,
            'seed': settings.DEFAULT_SEED,
            'workers': settings.EXPERIMENT_WORKERS,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return ExperimentSpec(**values)

    # ============================================================================
    # 单次重复
    # ============================================================================

    def run_replicate(self, spec: ExperimentSpec, replicate: int, rng: np.random.Generator) -> ReportRecord:
        """
        生成一个随机正则图并计算三种量

        Args:
            spec: 实验参数
            replicate: 重复编号
            rng: 该重复独立的随机数生成器

        Returns:
            ReportRecord: 实际 ρ1、标准界、扩展界、最优 (c₁, c₀) 与 δ
        """
        try:
            graph = graph_service.random_regular(spec.n, spec.d, rng)
        except GenerationFailed as e:
            e.details['replicate'] = replicate
            raise

        operators = graph_service.shift_operators(graph)
        mat_phi, mat_psi = operators.laplacian, operators.normalized
        s_phi = linalg_service.eig_sym(mat_phi)
        s_psi = linalg_service.eig_sym(mat_psi)
        rho1 = subspace_service.rho1(s_phi.block(spec.j, spec.r), s_psi.block(spec.j, spec.r))

        thm4_bound, thm4_feasible = float('nan'), False
        if spec.j == 0:
            try:
                thm4_bound = bound_service.theorem4_bound(s_phi, s_psi, mat_phi, mat_psi, spec.r).bound_rho1
                thm4_feasible = True
            except SpectralDKError as e:
                logger.warning(f"重复 {replicate}: 标准界不可用 ({e.message})")

        try:
            result = search_service.search_affine(mat_phi, mat_psi, spec.j, spec.r, cfg=spec.search)
            report = result.best_report
            record = ReportRecord(
                replicate=replicate, rho1=rho1, thm4_bound=thm4_bound,
                ext_bound=report.bound_rho1, c1=result.best_transform.c1, c0=result.best_transform.c0,
                delta=report.delta_used, thm4_feasible=thm4_feasible, ext_feasible=True,
            )
        except (GapViolation, NoFeasibleTransform) as e:
            logger.warning(f"重复 {replicate}: {e.message}")
            record = ReportRecord(
                replicate=replicate, rho1=rho1, thm4_bound=thm4_bound, ext_bound=float('nan'),
                c1=float('nan'), c0=float('nan'), delta=float('nan'),
                thm4_feasible=thm4_feasible, ext_feasible=False,
            )

        logger.info(f"重复 {replicate} 完成: ρ1={record.rho1:.3e}, 标准界={record.thm4_bound:.3e}, "
                    f"扩展界={record.ext_bound:.3e}")
        return record

    # ============================================================================
    # 完整实验
    # ============================================================================

    @log_execution_time
    def run(self, spec: ExperimentSpec) -> ExperimentResult:
        """
        运行全部重复；每个重复使用由基础种子派生的独立随机流，结果按重复编号排序

        Args:
            spec: 实验参数

        Returns:
            ExperimentResult: 实验结果
        """
        rngs = spawn_rngs(spec.seed, spec.replicates)
        logger.info(f"开始 d-正则实验: n={spec.n}, d={spec.d}, 重复 {spec.replicates} 次, "
                    f"r={spec.r}, j={spec.j}, seed={spec.seed}, 线程数 {spec.workers}")

        if spec.workers == 1:
            records = [self.run_replicate(spec, index, rng) for index, rng in enumerate(rngs)]
        else:
            with ThreadPoolExecutor(max_workers=spec.workers) as executor:
                futures = [executor.submit(self.run_replicate, spec, index, rng)
                           for index, rng in enumerate(rngs)]
                records = [future.result() for future in futures]

        records.sort(key=lambda record: record.replicate)
        return ExperimentResult(spec=spec, records=records)

    def write_outputs(self, result: ExperimentResult, out: Path) -> Dict[str, Path]:
        """写出 CSV 与同名 .summary.json 汇总文件"""
        out = Path(out)
        csv_path = io_service.write_csv(out, result.frame())
        summary_path = io_service.write_json(out.with_suffix('.summary.json'), result.summary())
        return {'csv': csv_path, 'summary': summary_path}


# 创建全局实验服务实例
experiment_service = ExperimentService()
