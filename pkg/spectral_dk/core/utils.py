"""
工具函数模块

提供通用的工具函数
"""

import math
from typing import Any, List, Optional

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    """基于计数器的 64 位随机数生成器 (Philox)"""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def spawn_rngs(seed: int, count: int) -> List[np.random.Generator]:
    """为每个重复实验派生独立的随机数流，结果与线程数无关"""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.Philox(child)) for child in children]


def json_float(value: Optional[float]) -> Any:
    """把浮点数转换为 JSON 可表示的值（无穷大转为字符串）"""
    if value is None:
        return None
    value = float(value)
    if math.isnan(value):
        return None
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def one_based(indices) -> List[int]:
    """把 0 基索引集合转换为排序后的 1 基索引列表"""
    return sorted(int(i) + 1 for i in indices)
