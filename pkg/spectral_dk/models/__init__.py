"""
数据模型模块

包含所有不可变的领域数据结构
"""

from .matrix import SymMatrix, Spectrum, SingularValueDecomposition
from .subspace import EigenvectorBlock, CanonicalAngles
from .transform import PolynomialTransform, TransformedSpectrum
from .bounds import IntervalTriplet, IndexPartition, ConstraintFlags, ChoiceBatch, StandardBound, BoundReport
from .search import SearchConfig, ChoiceOptimum, SearchResult, LandscapeCell
from .graph import Graph, ShiftOperatorSet
from .experiment import ExperimentSpec, ReportRecord

__all__ = [
    # 矩阵与子空间
    'SymMatrix',
    'Spectrum',
    'SingularValueDecomposition',
    'EigenvectorBlock',
    'CanonicalAngles',

    # 谱变换
    'PolynomialTransform',
    'TransformedSpectrum',

    # DK 界
    'IntervalTriplet',
    'IndexPartition',
    'ConstraintFlags',
    'ChoiceBatch',
    'StandardBound',
    'BoundReport',

    # 仿射搜索
    'SearchConfig',
    'ChoiceOptimum',
    'SearchResult',
    'LandscapeCell',

    # 图与实验
    'Graph',
    'ShiftOperatorSet',
    'ExperimentSpec',
    'ReportRecord'
]
