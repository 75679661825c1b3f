"""
数据验证器模块

提供参数与数值数据的验证功能
"""

import math
from typing import Any, Optional

import numpy as np

from spectral_dk.core.exceptions import InvalidInput


class BaseValidator:
    """基础验证器类"""

    def __init__(self, required: bool = True, allow_none: bool = False):
        self.required = required
        self.allow_none = allow_none

    def validate(self, value: Any, field_name: str = "参数") -> Any:
        """验证值"""
        if value is None:
            if self.allow_none:
                return None
            if self.required:
                raise InvalidInput(f"{field_name}不能为空")
            return None

        return self._validate_value(value, field_name)

    def _validate_value(self, value: Any, field_name: str) -> Any:
        """子类需要实现的验证逻辑"""
        return value


class IntegerValidator(BaseValidator):
    """整数验证器"""

    def __init__(self, min_value: Optional[int] = None, max_value: Optional[int] = None, **kwargs):
        super().__init__(**kwargs)
        self.min_value = min_value
        self.max_value = max_value

    def _validate_value(self, value: Any, field_name: str) -> int:
        if isinstance(value, bool):
            raise InvalidInput(f"{field_name}必须是整数")
        try:
            as_int = int(value)
        except (ValueError, TypeError):
            raise InvalidInput(f"{field_name}必须是整数")
        if isinstance(value, float) and value != as_int:
            raise InvalidInput(f"{field_name}必须是整数")

        if self.min_value is not None and as_int < self.min_value:
            raise InvalidInput(f"{field_name}不能小于{self.min_value}",
                               details={field_name: as_int})

        if self.max_value is not None and as_int > self.max_value:
            raise InvalidInput(f"{field_name}不能大于{self.max_value}",
                               details={field_name: as_int})

        return as_int


class FloatValidator(BaseValidator):
    """实数验证器"""

    def __init__(self, min_value: Optional[float] = None, max_value: Optional[float] = None,
                 strict_min: bool = False, allow_infinite: bool = False, **kwargs):
        super().__init__(**kwargs)
        self.min_value = min_value
        self.max_value = max_value
        self.strict_min = strict_min
        self.allow_infinite = allow_infinite

    def _validate_value(self, value: Any, field_name: str) -> float:
        try:
            as_float = float(value)
        except (ValueError, TypeError):
            raise InvalidInput(f"{field_name}必须是实数")

        if math.isnan(as_float) or (math.isinf(as_float) and not self.allow_infinite):
            raise InvalidInput(f"{field_name}必须是有限实数")

        if self.min_value is not None:
            if self.strict_min and as_float <= self.min_value:
                raise InvalidInput(f"{field_name}必须大于{self.min_value}")
            if not self.strict_min and as_float < self.min_value:
                raise InvalidInput(f"{field_name}不能小于{self.min_value}")

        if self.max_value is not None and as_float > self.max_value:
            raise InvalidInput(f"{field_name}不能大于{self.max_value}")

        return as_float


class ChoiceValidator(BaseValidator):
    """枚举验证器"""

    def __init__(self, enum_class, **kwargs):
        super().__init__(**kwargs)
        self.enum_class = enum_class
        self.valid_values = [item.value for item in enum_class]

    def _validate_value(self, value: Any, field_name: str):
        if isinstance(value, self.enum_class):
            return value
        if value not in self.valid_values:
            allowed = ', '.join(str(v) for v in self.valid_values)
            raise InvalidInput(f"{field_name}必须是以下值之一: {allowed}")
        return self.enum_class(value)


def ensure_finite(values: np.ndarray, field_name: str = "矩阵") -> np.ndarray:
    """检查数组全部为有限值"""
    array = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(array)):
        raise InvalidInput(f"{field_name}包含非有限值 (NaN 或 Inf)")
    return array


def validate_block_indices(n: int, j: int, r: int) -> None:
    """验证特征向量块偏移 j 与宽度 r: 1 <= r <= n, 0 <= j <= n - r"""
    IntegerValidator(min_value=1, max_value=n).validate(r, "块宽度 r")
    IntegerValidator(min_value=0, max_value=n - r).validate(j, "块偏移 j")


# 预定义的验证器实例
dimension_validator = IntegerValidator(min_value=1)
grid_points_validator = IntegerValidator(min_value=3)
refinement_rounds_validator = IntegerValidator(min_value=0)
positive_float_validator = FloatValidator(min_value=0.0, strict_min=True)
tolerance_validator = FloatValidator(min_value=0.0)
