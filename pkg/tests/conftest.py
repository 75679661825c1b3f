"""
测试配置文件

提供测试所需的fixtures和配置
"""

import os
import sys

import numpy as np
import pytest

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from spectral_dk import create_context
from spectral_dk.models.matrix import SymMatrix
from spectral_dk.services.graph_service import graph_service


@pytest.fixture(scope="session", autouse=True)
def settings():
    """整个测试会话使用测试环境配置"""
    return create_context('testing')


@pytest.fixture
def rng():
    """固定种子的随机数生成器"""
    return np.random.default_rng(20240607)


@pytest.fixture
def diagonal_pair():
    """Φ = diag(0, 1, 2)，Ψ = diag(0.1, 1.1, 2.1)"""
    return SymMatrix.diagonal([0.0, 1.0, 2.0]), SymMatrix.diagonal([0.1, 1.1, 2.1])


@pytest.fixture
def ladder_pair():
    """Φ = Ψ = diag(0, 1, 2, 3)"""
    return SymMatrix.diagonal([0.0, 1.0, 2.0, 3.0]), SymMatrix.diagonal([0.0, 1.0, 2.0, 3.0])


@pytest.fixture(scope="session")
def regular_operators():
    """固定种子的 30 节点 6-正则图的移位算子"""
    graph = graph_service.random_regular(30, 6, seed=7)
    return graph_service.shift_operators(graph)


@pytest.fixture
def write_matrix_file(tmp_path):
    """把数组写成矩阵文件的工厂函数"""
    def _write(name, values):
        values = np.atleast_2d(np.asarray(values, dtype=float))
        lines = [f"n {values.shape[0]}"]
        lines.extend(" ".join(repr(float(v)) for v in row) for row in values)
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding='utf-8')
        return path

    return _write
