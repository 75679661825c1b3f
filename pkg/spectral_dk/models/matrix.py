"""
矩阵数据模型

定义对称矩阵、谱分解与小矩阵奇异值分解的数据结构
"""

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from spectral_dk.core.exceptions import InvalidInput
from spectral_dk.core.validators import ensure_finite, validate_block_indices
from spectral_dk.models.subspace import EigenvectorBlock


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """实对称矩阵，构造时执行对称化 (M + Mᵀ) / 2"""

    entries: np.ndarray

    def __post_init__(self):
        values = ensure_finite(self.entries, "矩阵")
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise InvalidInput(f"矩阵必须是方阵，实际形状为 {values.shape}")
        if values.shape[0] < 1:
            raise InvalidInput("矩阵维数必须至少为 1")
        object.__setattr__(self, 'entries', _readonly((values + values.T) / 2.0))

    @classmethod
    def identity(cls, n: int) -> 'SymMatrix':
        return cls(np.eye(n))

    @classmethod
    def diagonal(cls, values) -> 'SymMatrix':
        return cls(np.diag(np.asarray(values, dtype=float)))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __sub__(self, other: 'SymMatrix') -> 'SymMatrix':
        return SymMatrix(self.entries - other.entries)

    def __add__(self, other: 'SymMatrix') -> 'SymMatrix':
        return SymMatrix(self.entries + other.entries)

    def scaled(self, factor: float) -> 'SymMatrix':
        return SymMatrix(self.entries * float(factor))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    对称矩阵的谱：特征值升序排列，第 k 列特征向量对应第 k 个特征值

    eigenvalue(k) 使用 1 基索引，并采用边界约定 λ₀ = −∞、λ_{n+1} = +∞。
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.eigenvalues, dtype=float)
        vectors = np.asarray(self.eigenvectors, dtype=float)
        if values.ndim != 1 or vectors.shape != (values.shape[0], values.shape[0]):
            raise InvalidInput("特征值与特征向量维度不一致")
        if np.any(np.diff(values) < 0):
            raise InvalidInput("特征值必须按升序排列")
        object.__setattr__(self, 'eigenvalues', _readonly(values))
        object.__setattr__(self, 'eigenvectors', _readonly(vectors))

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]

    def eigenvalue(self, k: int) -> float:
        """第 k 个特征值 (1 基)，k = 0 与 k = n + 1 取 ∓∞"""
        if k <= 0:
            return -np.inf
        if k > self.n:
            return np.inf
        return float(self.eigenvalues[k - 1])

    def extended_eigenvalues(self) -> np.ndarray:
        """长度 n + 2 的数组 [−∞, λ₁, …, λₙ, +∞]，下标即 1 基索引"""
        return np.concatenate(([-np.inf], self.eigenvalues, [np.inf]))

    def block(self, j: int, r: int) -> EigenvectorBlock:
        """第 j+1 … j+r 个特征向量组成的块 W_j"""
        validate_block_indices(self.n, j, r)
        return EigenvectorBlock(basis=self.eigenvectors[:, j:j + r], j=j)

    def orthogonality_residual(self) -> float:
        """‖UᵀU − I‖_max"""
        gram = self.eigenvectors.T @ self.eigenvectors
        return float(np.max(np.abs(gram - np.eye(self.n))))

    def reconstruction_residual(self, matrix: SymMatrix) -> float:
        """‖U diag(λ) Uᵀ − M‖_max"""
        rebuilt = (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.T
        return float(np.max(np.abs(rebuilt - matrix.entries)))

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            'n': self.n,
            'eigenvalues': self.eigenvalues.tolist(),
        }


@dataclass(frozen=True, eq=False)
class SingularValueDecomposition:
    """m = left · diag(values) · right_t，奇异值降序"""

    left: np.ndarray
    values: np.ndarray
    right_t: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'left', _readonly(self.left))
        object.__setattr__(self, 'values', _readonly(self.values))
        object.__setattr__(self, 'right_t', _readonly(self.right_t))

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.values) @ self.right_t
