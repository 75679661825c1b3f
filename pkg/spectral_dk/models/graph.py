"""
图数据模型

定义简单无向图与图移位算子集合 (A, D, L, L_sym)
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Tuple

import numpy as np

from spectral_dk.core.exceptions import InvalidInput
from spectral_dk.core.validators import dimension_validator
from spectral_dk.models.matrix import SymMatrix

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """简单无向图，节点编号 0 … n-1，边以 (u, v)、u < v 的形式存储"""

    n: int
    edges: FrozenSet[Edge]

    def __post_init__(self):
        n = dimension_validator.validate(self.n, "节点数 n")
        normalized = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"边 ({u}, {v}) 的节点编号超出范围 [0, {n})")
            if u == v:
                raise InvalidInput(f"不允许自环: ({u}, {v})")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'edges', frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> 'Graph':
        """从边序列构造，重复边视为多重边并拒绝"""
        seen = set()
        for u, v in edges:
            key = (min(int(u), int(v)), max(int(u), int(v)))
            if key in seen:
                raise InvalidInput(f"不允许多重边: {key}")
            seen.add(key)
        return cls(n=n, edges=frozenset(seen))

    def sorted_edges(self):
        return sorted(self.edges)

    def degrees(self) -> np.ndarray:
        counts = np.zeros(self.n, dtype=int)
        for u, v in self.edges:
            counts[u] += 1
            counts[v] += 1
        return counts

    def adjacency(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n))
        for u, v in self.edges:
            matrix[u, v] = 1.0
            matrix[v, u] = 1.0
        return matrix


@dataclass(frozen=True, eq=False)
class ShiftOperatorSet:
    """图移位算子：邻接矩阵 A、度 D、拉普拉斯 L = D − A、归一化拉普拉斯 L_sym"""

    adjacency: SymMatrix
    degrees: np.ndarray
    laplacian: SymMatrix
    normalized: SymMatrix

    @property
    def n(self) -> int:
        return self.adjacency.n

    @property
    def regular_degree(self) -> Optional[int]:
        if np.all(self.degrees == self.degrees[0]):
            return int(self.degrees[0])
        return None
