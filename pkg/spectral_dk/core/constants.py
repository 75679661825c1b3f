"""
系统常量定义

定义系统中使用的所有常量
"""

from enum import Enum


class IntervalChoice(Enum):
    """DK 区间构造方式"""
    CHOICE_1 = 1  # S1 由变换后的 Φ 谱定义
    CHOICE_2 = 2  # S1 由 Ψ 谱定义


class NormKind(Enum):
    """子空间距离度量"""
    RHO1 = "rho1"
    RHO2 = "rho2"


class EigenSolver(Enum):
    """对称特征分解后端"""
    LAPACK = "lapack"
    JACOBI = "jacobi"


class OutputFormat(Enum):
    """输出格式"""
    CSV = "csv"
    JSON = "json"


class ConstraintName(Enum):
    """约束条件名称"""
    GAP_ASSUMPTION = "gap_assumption"
    CONSTRAINT_1 = "constraint_1"
    CONSTRAINT_2A = "constraint_2a"
    CONSTRAINT_2B = "constraint_2b"
    DELTA_POSITIVE = "delta_positive"
    DEGENERATE = "degenerate_transform"


class ExitCode:
    """命令行退出码"""
    SUCCESS = 0
    INPUT_ERROR = 1
    INFEASIBLE = 2


class ReportSchema:
    """输出文件格式常量"""
    VERSION = 1
    CSV_COLUMNS = ('replicate', 'rho1', 'thm4_bound', 'ext_bound', 'c1', 'c0', 'delta')
    LANDSCAPE_COLUMNS = ('c1', 'c0', 'bound', 'feasible', 'failed_constraint')
    FLOAT_FORMAT = '%.17g'


class FileFormat:
    """矩阵与边列表文件格式"""
    HEADER_KEY = "n"
    COMMENT_PREFIX = "#"


class ConfigDefaults:
    """配置默认值常量"""
    # 数值容差
    SYMMETRY_TOLERANCE = 1e-8
    STIEFEL_TOLERANCE = 1e-9
    COSINE_TOLERANCE = 1e-8
    COINCIDENCE_TOLERANCE = 1e-8
    FRAGILE_MARGIN = 1e-10
    GAP_TOLERANCE = 0.0

    # Jacobi 迭代
    JACOBI_TOLERANCE = 1e-12
    JACOBI_MAX_SWEEPS = 100

    # 多项式
    MAX_POLYNOMIAL_DEGREE = 6

    # 仿射搜索
    SEARCH_GRID_POINTS = 41
    SEARCH_REFINEMENT_ROUNDS = 3
    SEARCH_ZERO_BAND = 1e-6
    SEARCH_SHRINK_FACTOR = 5.0
    SEARCH_C1_SPAN = 2.0

    # 随机正则图
    REGULAR_GRAPH_MAX_ATTEMPTS = 10000

    # 实验
    DEFAULT_SEED = 20240101
    EXPERIMENT_N = 300
    EXPERIMENT_D = 30
    EXPERIMENT_REPLICATES = 25
    EXPERIMENT_R = 3
    EXPERIMENT_J = 0
