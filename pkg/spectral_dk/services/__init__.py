"""
计算服务层模块

包含线性代数、子空间距离、谱变换、DK 界、仿射搜索、图算子、文件读写与实验服务
"""

from .linalg_service import LinalgService, linalg_service
from .subspace_service import SubspaceService, subspace_service
from .transform_service import TransformService, transform_service
from .bound_service import BoundService, bound_service
from .search_service import SearchService, search_service
from .graph_service import GraphService, graph_service
from .io_service import IOService, io_service
from .experiment_service import ExperimentResult, ExperimentService, experiment_service

__all__ = [
    'LinalgService',
    'linalg_service',
    'SubspaceService',
    'subspace_service',
    'TransformService',
    'transform_service',
    'BoundService',
    'bound_service',
    'SearchService',
    'search_service',
    'GraphService',
    'graph_service',
    'IOService',
    'io_service',
    'ExperimentResult',
    'ExperimentService',
    'experiment_service'
]
