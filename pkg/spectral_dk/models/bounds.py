"""
DK 界数据模型

定义区间三元组、索引划分、约束标志、标准界与扩展界报告
"""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Optional, Tuple

import numpy as np

from spectral_dk.core.constants import ConstraintName, IntervalChoice, NormKind, ReportSchema
from spectral_dk.core.exceptions import InvalidInput
from spectral_dk.core.utils import json_float
from spectral_dk.models.transform import PolynomialTransform


@dataclass(frozen=True)
class IntervalTriplet:
    """DK 区间参数 (a, b, δ)：S₁ = [a, b]，S₂ = ℝ \\ (a − δ, b + δ)"""

    a: float
    b: float
    delta: float
    choice: IntervalChoice

    def __post_init__(self):
        if self.a > self.b:
            raise InvalidInput(f"区间端点必须满足 a <= b (a={self.a}, b={self.b})")

    @property
    def is_valid(self) -> bool:
        return self.delta > 0

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'choice': self.choice.value,
            'a': json_float(self.a),
            'b': json_float(self.b),
            'delta': json_float(self.delta),
        }


@dataclass(frozen=True)
class IndexPartition:
    """
    被排除索引（1 基）按变换值相对 [a, b] 的划分

    a1: p(φᵢ) > b；a2: p(φᵢ) < a；unclassified: 落在 [a, b] 内；
    endpoint_ties: unclassified 中恰好等于 a 或 b 的索引。
    """

    a1: FrozenSet[int]
    a2: FrozenSet[int]
    unclassified: FrozenSet[int] = frozenset()
    endpoint_ties: FrozenSet[int] = frozenset()

    @property
    def satisfies_constraint1(self) -> bool:
        return not self.unclassified

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'A1': sorted(self.a1),
            'A2': sorted(self.a2),
            'unclassified': sorted(self.unclassified),
            'endpoint_ties': sorted(self.endpoint_ties),
        }


@dataclass(frozen=True)
class ConstraintFlags:
    """某一种区间选择下各约束的判定结果"""

    choice: IntervalChoice
    delta_positive: bool
    constraint_1: bool
    lower_ok: bool
    upper_ok: bool
    lower_waived: bool = False
    upper_waived: bool = False
    margins: Dict[str, float] = field(default_factory=dict)

    @property
    def constraint_2(self) -> bool:
        """Constraints 2A (选择 1) 或 2B (选择 2) 的三个不等式"""
        return self.delta_positive and self.lower_ok and self.upper_ok

    @property
    def constraint_2_name(self) -> ConstraintName:
        if self.choice == IntervalChoice.CHOICE_1:
            return ConstraintName.CONSTRAINT_2A
        return ConstraintName.CONSTRAINT_2B

    @property
    def ok(self) -> bool:
        return self.constraint_1 and self.constraint_2

    @property
    def first_failure(self) -> Optional[ConstraintName]:
        if not self.delta_positive:
            return ConstraintName.DELTA_POSITIVE
        if not self.constraint_1:
            return ConstraintName.CONSTRAINT_1
        if not self.constraint_2:
            return self.constraint_2_name
        return None

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'choice': self.choice.value,
            'ok': self.ok,
            'delta_positive': self.delta_positive,
            'constraint_1': self.constraint_1,
            self.constraint_2_name.value: self.constraint_2,
            'lower_waived': self.lower_waived,
            'upper_waived': self.upper_waived,
            'margins': {key: json_float(value) for key, value in self.margins.items()},
        }


@dataclass(frozen=True, eq=False)
class ChoiceBatch:
    """
    一种区间选择在 k 组变换值上的批量判定结果，每个字段是长度 k 的数组

    lower_gap / upper_gap 是左右两个不等式的左端，需严格小于 delta；
    lower_waived / upper_waived 表示对应一侧无界且无被排除值，不等式自动成立。
    """

    choice: IntervalChoice
    a: np.ndarray
    b: np.ndarray
    delta: np.ndarray
    lower_gap: np.ndarray
    upper_gap: np.ndarray
    lower_waived: np.ndarray
    upper_waived: np.ndarray
    constraint_1: np.ndarray
    separation: np.ndarray

    @property
    def delta_positive(self) -> np.ndarray:
        return self.delta > 0

    @property
    def lower_ok(self) -> np.ndarray:
        return self.lower_waived | (self.lower_gap < self.delta)

    @property
    def upper_ok(self) -> np.ndarray:
        return self.upper_waived | (self.upper_gap < self.delta)

    @property
    def ok(self) -> np.ndarray:
        return self.delta_positive & self.constraint_1 & self.lower_ok & self.upper_ok

    def triplet(self, i: int = 0) -> IntervalTriplet:
        return IntervalTriplet(a=float(self.a[i]), b=float(self.b[i]),
                               delta=float(self.delta[i]), choice=self.choice)

    def flags(self, i: int = 0) -> ConstraintFlags:
        delta = float(self.delta[i])
        lower_raw = bool(self.lower_gap[i] < delta)
        upper_raw = bool(self.upper_gap[i] < delta)
        return ConstraintFlags(
            choice=self.choice,
            delta_positive=delta > 0,
            constraint_1=bool(self.constraint_1[i]),
            lower_ok=bool(self.lower_ok[i]),
            upper_ok=bool(self.upper_ok[i]),
            lower_waived=bool(self.lower_waived[i]) and not lower_raw,
            upper_waived=bool(self.upper_waived[i]) and not upper_raw,
            margins={
                'delta': delta,
                'lower': delta - float(self.lower_gap[i]),
                'upper': delta - float(self.upper_gap[i]),
                'constraint_1': float(self.separation[i]),
            },
        )


@dataclass(frozen=True)
class StandardBound:
    """首 r 个特征向量的标准 DK 界"""

    bound_rho1: float
    bound_rho2: float
    delta: float
    numerator: float
    c_factor: float

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'bound_rho1': json_float(self.bound_rho1),
            'bound_rho2': json_float(self.bound_rho2),
            'delta': json_float(self.delta),
            'numerator': json_float(self.numerator),
            'c_factor': json_float(self.c_factor),
        }


@dataclass(frozen=True)
class BoundReport:
    """
    扩展 DK 界的完整报告

    两种区间选择都会计算；delta_used 取有效选择中最大的 δ。
    没有有效选择时 bound_rho1 / bound_rho2 / delta_used / interval 为 None，
    failing_constraints 记录每种选择第一个失败的约束。
    """

    n: int
    j: int
    j_psi: int
    r: int
    transform: PolynomialTransform
    norm_kind: NormKind
    rho1_attained: float
    rho2_attained: float
    numerator: float
    c_factor: float
    intervals: Dict[IntervalChoice, IntervalTriplet]
    partitions: Dict[IntervalChoice, IndexPartition]
    flags: Dict[IntervalChoice, ConstraintFlags]
    interval: Optional[IntervalTriplet] = None
    delta_used: Optional[float] = None
    bound_rho2: Optional[float] = None
    bound_rho1: Optional[float] = None
    standard_bound: Optional[StandardBound] = None
    standard_feasible: bool = False
    failing_constraints: Tuple[str, ...] = ()
    fragile_margins: Tuple[str, ...] = ()

    @property
    def constraints_ok(self) -> bool:
        return self.interval is not None and self.flags[self.interval.choice].ok

    @property
    def valid_choices(self) -> Tuple[IntervalChoice, ...]:
        return tuple(choice for choice in IntervalChoice if self.flags[choice].ok)

    @property
    def bound(self) -> Optional[float]:
        """按 norm_kind 选择的主界"""
        if self.norm_kind == NormKind.RHO2:
            return self.bound_rho2
        return self.bound_rho1

    @property
    def attained(self) -> float:
        if self.norm_kind == NormKind.RHO2:
            return self.rho2_attained
        return self.rho1_attained

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'schema': ReportSchema.VERSION,
            'n': self.n,
            'j': self.j,
            'j_psi': self.j_psi,
            'r': self.r,
            'norm_kind': self.norm_kind.value,
            'transform': self.transform.to_dict(),
            'constraints_ok': self.constraints_ok,
            'bound': json_float(self.bound),
            'attained': json_float(self.attained),
            'rho1_attained': json_float(self.rho1_attained),
            'rho2_attained': json_float(self.rho2_attained),
            'bound_rho1': json_float(self.bound_rho1),
            'bound_rho2': json_float(self.bound_rho2),
            'delta_used': json_float(self.delta_used),
            'numerator': json_float(self.numerator),
            'c_factor': json_float(self.c_factor),
            'interval': self.interval.to_dict() if self.interval else None,
            'choices': {
                str(choice.value): {
                    'interval': self.intervals[choice].to_dict(),
                    'partition': self.partitions[choice].to_dict(),
                    'flags': self.flags[choice].to_dict(),
                }
                for choice in IntervalChoice
            },
            'standard_feasible': self.standard_feasible,
            'standard_bound': self.standard_bound.to_dict() if self.standard_bound else None,
            'failing_constraints': list(self.failing_constraints),
            'fragile_margins': list(self.fragile_margins),
        }
