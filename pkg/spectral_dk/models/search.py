"""
仿射搜索数据模型

定义搜索配置、各区间选择的最优点、搜索结果与界景观网格单元
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from spectral_dk.core.constants import ConfigDefaults, IntervalChoice
from spectral_dk.core.exceptions import InvalidInput
from spectral_dk.core.utils import json_float
from spectral_dk.core.validators import (
    FloatValidator,
    grid_points_validator,
    positive_float_validator,
    refinement_rounds_validator,
)
from spectral_dk.models.bounds import BoundReport
from spectral_dk.models.transform import PolynomialTransform

_finite = FloatValidator()


def _validate_range(value, field_name: str) -> Tuple[float, float]:
    try:
        low, high = value
    except (TypeError, ValueError):
        raise InvalidInput(f"{field_name}必须是 (下界, 上界) 二元组")
    low = _finite.validate(low, f"{field_name}下界")
    high = _finite.validate(high, f"{field_name}上界")
    if low > high:
        raise InvalidInput(f"{field_name}下界不能大于上界", details={field_name: [low, high]})
    return low, high


@dataclass(frozen=True)
class SearchConfig:
    """(c₁, c₀) 网格搜索配置"""

    c1_range: Tuple[float, float]
    c0_range: Tuple[float, float]
    grid_points: int = ConfigDefaults.SEARCH_GRID_POINTS
    refinement_rounds: int = ConfigDefaults.SEARCH_REFINEMENT_ROUNDS
    exclude_zero_band: float = ConfigDefaults.SEARCH_ZERO_BAND
    shrink_factor: float = ConfigDefaults.SEARCH_SHRINK_FACTOR
    least_squares_seed: bool = True
    identity_seed: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'c1_range', _validate_range(self.c1_range, "c1 范围"))
        object.__setattr__(self, 'c0_range', _validate_range(self.c0_range, "c0 范围"))
        object.__setattr__(self, 'grid_points',
                           grid_points_validator.validate(self.grid_points, "网格点数"))
        object.__setattr__(self, 'refinement_rounds',
                           refinement_rounds_validator.validate(self.refinement_rounds, "细化轮数"))
        object.__setattr__(self, 'exclude_zero_band',
                           positive_float_validator.validate(self.exclude_zero_band, "c1 零带宽"))
        shrink = FloatValidator(min_value=1.0, strict_min=True).validate(self.shrink_factor, "收缩因子")
        object.__setattr__(self, 'shrink_factor', shrink)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'c1_range': list(self.c1_range),
            'c0_range': list(self.c0_range),
            'grid_points': self.grid_points,
            'refinement_rounds': self.refinement_rounds,
            'exclude_zero_band': self.exclude_zero_band,
            'shrink_factor': self.shrink_factor,
            'least_squares_seed': self.least_squares_seed,
            'identity_seed': self.identity_seed,
        }


@dataclass(frozen=True)
class ChoiceOptimum:
    """某一种区间选择子问题的最优可行点"""

    choice: IntervalChoice
    transform: PolynomialTransform
    bound: float
    delta: float

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'choice': self.choice.value,
            'c1': self.transform.c1,
            'c0': self.transform.c0,
            'bound': json_float(self.bound),
            'delta': json_float(self.delta),
        }


@dataclass(frozen=True)
class SearchResult:
    """仿射搜索结果，best_report 对应两种选择中较小的界"""

    best_transform: PolynomialTransform
    best_report: BoundReport
    per_choice_best: Dict[IntervalChoice, Optional[ChoiceOptimum]]
    evaluations: int
    history: List[float] = field(default_factory=list)

    @property
    def bound(self) -> float:
        return self.best_report.bound

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'best_transform': self.best_transform.to_dict(),
            'bound': json_float(self.bound),
            'evaluations': self.evaluations,
            'history': [json_float(value) for value in self.history],
            'per_choice_best': {
                str(choice.value): optimum.to_dict() if optimum else None
                for choice, optimum in self.per_choice_best.items()
            },
        }


@dataclass(frozen=True)
class LandscapeCell:
    """界景观中的一个网格点；不可行时 bound 为 None 并记录失败约束"""

    c1: float
    c0: float
    bound: Optional[float]
    feasible: bool
    failed_constraint: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'c1': self.c1,
            'c0': self.c0,
            'bound': json_float(self.bound),
            'feasible': self.feasible,
            'failed_constraint': self.failed_constraint,
        }
