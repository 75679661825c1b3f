"""
实验数据模型

定义 d-正则图实验参数与单个重复实验的记录
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional

from spectral_dk.core.constants import ConfigDefaults
from spectral_dk.core.exceptions import InvalidInput
from spectral_dk.core.utils import json_float
from spectral_dk.core.validators import IntegerValidator, dimension_validator, validate_block_indices
from spectral_dk.models.search import SearchConfig


@dataclass(frozen=True)
class ExperimentSpec:
    """d-正则图实验参数，默认值对应 300 节点、30-正则、25 次重复、前 3 个特征向量"""

    n: int = ConfigDefaults.EXPERIMENT_N
    d: int = ConfigDefaults.EXPERIMENT_D
    replicates: int = ConfigDefaults.EXPERIMENT_REPLICATES
    r: int = ConfigDefaults.EXPERIMENT_R
    j: int = ConfigDefaults.EXPERIMENT_J
    seed: int = ConfigDefaults.DEFAULT_SEED
    search: Optional[SearchConfig] = None
    workers: int = 1

    def __post_init__(self):
        n = dimension_validator.validate(self.n, "节点数 n")
        d = IntegerValidator(min_value=1, max_value=n - 1).validate(self.d, "度 d")
        if (n * d) % 2:
            raise InvalidInput(f"n·d 必须为偶数 (n={n}, d={d})")
        IntegerValidator(min_value=1).validate(self.replicates, "重复次数")
        IntegerValidator(min_value=0).validate(self.seed, "随机种子")
        IntegerValidator(min_value=1).validate(self.workers, "线程数")
        validate_block_indices(n, self.j, self.r)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'n': self.n,
            'd': self.d,
            'replicates': self.replicates,
            'r': self.r,
            'j': self.j,
            'seed': self.seed,
            'workers': self.workers,
            'search': self.search.to_dict() if self.search else None,
        }


@dataclass(frozen=True)
class ReportRecord:
    """单个重复实验的结果：实际 ρ1、标准界、扩展界与最优仿射参数"""

    replicate: int
    rho1: float
    thm4_bound: float
    ext_bound: float
    c1: float
    c0: float
    delta: float
    thm4_feasible: bool = True
    ext_feasible: bool = True

    def to_row(self) -> Dict[str, Any]:
        """CSV 行（列顺序见 ReportSchema.CSV_COLUMNS）"""
        return {
            'replicate': self.replicate,
            'rho1': self.rho1,
            'thm4_bound': self.thm4_bound,
            'ext_bound': self.ext_bound,
            'c1': self.c1,
            'c0': self.c0,
            'delta': self.delta,
        }

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        row = {key: json_float(value) if isinstance(value, float) else value
               for key, value in self.to_row().items()}
        row['thm4_feasible'] = self.thm4_feasible
        row['ext_feasible'] = self.ext_feasible
        return row
