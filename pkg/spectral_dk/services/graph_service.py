"""
图移位算子服务层

提供邻接矩阵、拉普拉斯矩阵、归一化拉普拉斯矩阵的构造，正则性检查，
以及基于配对模型（桩重配）的随机 d-正则图生成
"""

import logging
from collections import defaultdict
from typing import Dict, Optional, Set, Tuple, Type, Union

import numpy as np

from spectral_dk.core.config_manager import config_manager
from spectral_dk.core.decorators import retry
from spectral_dk.core.exceptions import DegreeZero, GenerationFailed, InvalidInput
from spectral_dk.core.utils import make_rng
from spectral_dk.core.validators import IntegerValidator, dimension_validator
from spectral_dk.models.graph import Graph, ShiftOperatorSet
from spectral_dk.models.matrix import SymMatrix

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class _PairingRejected(Exception):
    """一次配对尝试无法继续"""


class GraphService:
    """图移位算子服务类"""

    def __init__(self, settings: Optional[Type] = None):
        self.settings = settings

    def _get_settings(self) -> Type:
        """获取配置"""
        if self.settings is not None:
            return self.settings
        return config_manager.settings

    # ============================================================================
    # 移位算子
    # ============================================================================

    def shift_operators(self, g: Graph) -> ShiftOperatorSet:
        """
        构造 A、D、L = D − A 与 L_sym = D^{-1/2} L D^{-1/2}

        Args:
            g: 简单无向图

        Returns:
            ShiftOperatorSet: 图移位算子集合
        """
        degrees = g.degrees()
        isolated = np.flatnonzero(degrees == 0)
        if isolated.size:
            logger.error(f"图中存在孤立节点: {isolated[:10].tolist()}")
            raise DegreeZero(details={'nodes': isolated.tolist()})

        adjacency = g.adjacency()
        laplacian = np.diag(degrees.astype(float)) - adjacency
        inv_sqrt = 1.0 / np.sqrt(degrees.astype(float))
        normalized = inv_sqrt[:, None] * laplacian * inv_sqrt[None, :]
        return ShiftOperatorSet(
            adjacency=SymMatrix(adjacency),
            degrees=degrees,
            laplacian=SymMatrix(laplacian),
            normalized=SymMatrix(normalized),
        )

    def regularity_check(self, g: Graph) -> Optional[int]:
        """所有节点度相同时返回 d，否则返回 None"""
        degrees = g.degrees()
        if np.all(degrees == degrees[0]):
            return int(degrees[0])
        return None

    # ============================================================================
    # 随机正则图
    # ============================================================================

    def random_regular(self, n: int, d: int, seed: Union[int, np.random.Generator],
                       max_attempts: Optional[int] = None) -> Graph:
        """
        生成随机 d-正则简单图

        每次尝试把 n·d 个桩随机配对；产生自环或重边的桩进入下一轮重新配对，
        剩余桩之间已无可用边时本次尝试失败。

        Args:
            n: 节点数
            d: 度
            seed: 整数种子或随机数生成器
            max_attempts: 最大尝试次数，默认取 REGULAR_GRAPH_MAX_ATTEMPTS

        Returns:
            Graph: 每个节点度均为 d 的简单图
        """
        n = dimension_validator.validate(n, "节点数 n")
        d = IntegerValidator(min_value=0).validate(d, "度 d")
        if d >= n:
            raise InvalidInput(f"度 d 必须小于节点数 n (n={n}, d={d})")
        if (n * d) % 2:
            raise InvalidInput(f"n·d 必须为偶数 (n={n}, d={d})")

        rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
        if max_attempts is None:
            max_attempts = self._get_settings().REGULAR_GRAPH_MAX_ATTEMPTS
        if d == 0:
            return Graph(n=n, edges=frozenset())

        attempt = retry(max_attempts=max_attempts, exceptions=(_PairingRejected,),
                        final_error=GenerationFailed)(self._try_creation)
        edges = attempt(n, d, rng)
        logger.debug(f"随机 {d}-正则图生成完成: n={n}, 边数={len(edges)}")
        return Graph(n=n, edges=frozenset(edges))

    @staticmethod
    def _suitable(edges: Set[Edge], potential_edges: Dict[int, int]) -> bool:
        """剩余桩之间是否还存在可以加入的边"""
        if not potential_edges:
            return True
        nodes = list(potential_edges)
        for index, s1 in enumerate(nodes):
            for s2 in nodes[:index]:
                pair = (s2, s1) if s2 < s1 else (s1, s2)
                if pair not in edges:
                    return True
        return False

    def _try_creation(self, n: int, d: int, rng: np.random.Generator) -> Set[Edge]:
        edges: Set[Edge] = set()
        stubs = np.tile(np.arange(n), d)

        while stubs.size:
            potential_edges: Dict[int, int] = defaultdict(int)
            rng.shuffle(stubs)
            for s1, s2 in stubs.reshape(-1, 2).tolist():
                if s1 > s2:
                    s1, s2 = s2, s1
                if s1 != s2 and (s1, s2) not in edges:
                    edges.add((s1, s2))
                else:
                    potential_edges[s1] += 1
                    potential_edges[s2] += 1

            if not self._suitable(edges, potential_edges):
                raise _PairingRejected(f"剩余 {sum(potential_edges.values())} 个桩无法配对")

            stubs = np.array([node for node, count in potential_edges.items() for _ in range(count)],
                             dtype=int)
        return edges


# 创建全局图服务实例
graph_service = GraphService()
