"""
子空间数据模型

定义特征向量块（Stiefel 流形元素）与典型角
"""

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from spectral_dk.core.constants import ConfigDefaults
from spectral_dk.core.exceptions import InvalidInput
from spectral_dk.core.validators import ensure_finite, validate_block_indices


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class EigenvectorBlock:
    """n×r 标准正交列矩阵，保存 r 个连续特征向量（偏移为 j）"""

    basis: np.ndarray
    j: int = 0

    def __post_init__(self):
        basis = ensure_finite(self.basis, "特征向量块")
        if basis.ndim != 2:
            raise InvalidInput("特征向量块必须是二维矩阵")
        n, r = basis.shape
        validate_block_indices(n, self.j, r)
        object.__setattr__(self, 'basis', _readonly(basis))

    @classmethod
    def from_columns(cls, basis, j: int = 0,
                     tolerance: float = ConfigDefaults.STIEFEL_TOLERANCE) -> 'EigenvectorBlock':
        """构造并检查 Stiefel 条件 ‖BᵀB − I‖_max <= tolerance"""
        block = cls(basis=np.asarray(basis, dtype=float), j=j)
        residual = block.stiefel_residual()
        if residual > tolerance:
            raise InvalidInput(f"特征向量块的列不是标准正交的 (残差 {residual:.3e})",
                               details={'residual': residual})
        return block

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def r(self) -> int:
        return self.basis.shape[1]

    def stiefel_residual(self) -> float:
        gram = self.basis.T @ self.basis
        return float(np.max(np.abs(gram - np.eye(self.r)))) if self.r else 0.0


@dataclass(frozen=True, eq=False)
class CanonicalAngles:
    """
    两个子空间之间的典型角

    cosines 按降序排列；sines[i] 与 cosines[i] 对应同一个角。
    只保存前 min(r, n-r) 个（最大的）角，其余角恒为 0。
    """

    cosines: np.ndarray
    sines: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'cosines', _readonly(self.cosines))
        object.__setattr__(self, 'sines', _readonly(self.sines))

    @property
    def count(self) -> int:
        return int(self.cosines.shape[0])

    @property
    def angles(self) -> np.ndarray:
        """θ_k = arcsin(β_k)"""
        return np.arcsin(np.clip(self.sines, 0.0, 1.0))

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'cosines': self.cosines.tolist(),
            'sines': self.sines.tolist(),
        }
