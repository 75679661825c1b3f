"""
谱变换数据模型

定义多项式变换 p(t) = c_l tˡ + … + c₁t + c₀ 与变换后的谱
"""

from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from spectral_dk.core.constants import ConfigDefaults
from spectral_dk.core.exceptions import InvalidInput
from spectral_dk.core.validators import ensure_finite


@dataclass(frozen=True)
class PolynomialTransform:
    """
    多项式变换，系数按升幂存储 (c₀, c₁, …, c_l)

    构造时去掉末尾的零系数，因此次数 l 的首项系数只有在 l == 0 时才可能为 0。
    """

    coefficients: Tuple[float, ...]

    def __post_init__(self):
        values = [float(c) for c in ensure_finite(np.atleast_1d(self.coefficients), "多项式系数")]
        if not values:
            raise InvalidInput("多项式至少需要一个系数")
        while len(values) > 1 and values[-1] == 0.0:
            values.pop()
        if len(values) - 1 > ConfigDefaults.MAX_POLYNOMIAL_DEGREE:
            raise InvalidInput(f"多项式次数不能大于{ConfigDefaults.MAX_POLYNOMIAL_DEGREE}",
                               details={'degree': len(values) - 1})
        object.__setattr__(self, 'coefficients', tuple(values))

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[float]) -> 'PolynomialTransform':
        return cls(tuple(coefficients))

    @classmethod
    def identity(cls) -> 'PolynomialTransform':
        return cls((0.0, 1.0))

    @classmethod
    def affine(cls, c1: float, c0: float = 0.0) -> 'PolynomialTransform':
        """f(x) = c₁x + c₀"""
        return cls((c0, c1))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_affine(self) -> bool:
        return self.degree <= 1

    @property
    def c0(self) -> float:
        return self.coefficients[0]

    @property
    def c1(self) -> float:
        return self.coefficients[1] if self.degree >= 1 else 0.0

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'degree': self.degree,
            'coefficients': list(self.coefficients),
        }

    def __str__(self):
        terms = []
        for power, coefficient in enumerate(self.coefficients):
            if power == 0:
                terms.append(f"{coefficient:g}")
            elif power == 1:
                terms.append(f"{coefficient:g}·x")
            else:
                terms.append(f"{coefficient:g}·x^{power}")
        return " + ".join(reversed(terms))


@dataclass(frozen=True, eq=False)
class TransformedSpectrum:
    """变换后的特征值 p(φᵢ)，保持原始索引顺序（不重新排序）"""

    values: np.ndarray
    source: PolynomialTransform

    def __post_init__(self):
        values = np.array(self.values, dtype=float, copy=True)
        if values.ndim != 1 or values.shape[0] < 1:
            raise InvalidInput("变换后的谱必须是非空一维数组")
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def value(self, i: int) -> float:
        """第 i 个 (1 基) 变换后特征值"""
        return float(self.values[i - 1])
