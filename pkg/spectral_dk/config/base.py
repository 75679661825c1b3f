"""
基础配置类

包含所有环境共用的基础配置
"""

import os
import logging
from typing import Dict, Any

from spectral_dk.core.constants import ConfigDefaults, EigenSolver
from spectral_dk.core.exceptions import ConfigurationError


def _env_float(name: str, default: float) -> float:
    return float(os.getenv(name, str(default)))


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


class BaseConfig:
    """基础配置类"""

    # 应用基础信息
    APP_TITLE = os.getenv('APP_TITLE', 'spectral-dk')
    APP_VERSION = os.getenv('APP_VERSION', '1.0.0')
    APP_DESCRIPTION = os.getenv('APP_DESCRIPTION', '基于多项式谱变换的扩展 Davis-Kahan 子空间距离界')

    DEBUG = False
    TESTING = False

    # 日志配置
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    LOG_FILE = os.getenv('LOG_FILE')
    LOG_MAX_BYTES = _env_int('LOG_MAX_BYTES', 10485760)  # 10MB
    LOG_BACKUP_COUNT = _env_int('LOG_BACKUP_COUNT', 5)

    # 特征分解
    EIGEN_SOLVER = os.getenv('EIGEN_SOLVER', EigenSolver.LAPACK.value)
    JACOBI_TOLERANCE = _env_float('JACOBI_TOLERANCE', ConfigDefaults.JACOBI_TOLERANCE)
    JACOBI_MAX_SWEEPS = _env_int('JACOBI_MAX_SWEEPS', ConfigDefaults.JACOBI_MAX_SWEEPS)

    # 数值容差
    SYMMETRY_TOLERANCE = _env_float('SYMMETRY_TOLERANCE', ConfigDefaults.SYMMETRY_TOLERANCE)
    STIEFEL_TOLERANCE = _env_float('STIEFEL_TOLERANCE', ConfigDefaults.STIEFEL_TOLERANCE)
    COSINE_TOLERANCE = _env_float('COSINE_TOLERANCE', ConfigDefaults.COSINE_TOLERANCE)
    COINCIDENCE_TOLERANCE = _env_float('COINCIDENCE_TOLERANCE', ConfigDefaults.COINCIDENCE_TOLERANCE)
    FRAGILE_MARGIN = _env_float('FRAGILE_MARGIN', ConfigDefaults.FRAGILE_MARGIN)
    GAP_TOLERANCE = _env_float('GAP_TOLERANCE', ConfigDefaults.GAP_TOLERANCE)

    # 仿射搜索
    SEARCH_GRID_POINTS = _env_int('SEARCH_GRID_POINTS', ConfigDefaults.SEARCH_GRID_POINTS)
    SEARCH_REFINEMENT_ROUNDS = _env_int('SEARCH_REFINEMENT_ROUNDS', ConfigDefaults.SEARCH_REFINEMENT_ROUNDS)
    SEARCH_ZERO_BAND = _env_float('SEARCH_ZERO_BAND', ConfigDefaults.SEARCH_ZERO_BAND)
    SEARCH_SHRINK_FACTOR = _env_float('SEARCH_SHRINK_FACTOR', ConfigDefaults.SEARCH_SHRINK_FACTOR)

    # 随机图与实验
    DEFAULT_SEED = _env_int('SPECTRAL_DK_SEED', ConfigDefaults.DEFAULT_SEED)
    REGULAR_GRAPH_MAX_ATTEMPTS = _env_int('REGULAR_GRAPH_MAX_ATTEMPTS',
                                          ConfigDefaults.REGULAR_GRAPH_MAX_ATTEMPTS)
    EXPERIMENT_WORKERS = _env_int('EXPERIMENT_WORKERS', 1)
    EXPERIMENT_N = ConfigDefaults.EXPERIMENT_N
    EXPERIMENT_D = ConfigDefaults.EXPERIMENT_D
    EXPERIMENT_REPLICATES = ConfigDefaults.EXPERIMENT_REPLICATES
    EXPERIMENT_R = ConfigDefaults.EXPERIMENT_R
    EXPERIMENT_J = ConfigDefaults.EXPERIMENT_J

    @classmethod
    def init_app(cls):
        """初始化运行配置"""
        cls.validate_config()
        logging.getLogger('spectral_dk').setLevel(cls.LOG_LEVEL)

    @classmethod
    def validate_config(cls):
        """验证配置有效性"""
        errors = []

        solvers = [item.value for item in EigenSolver]
        if cls.EIGEN_SOLVER not in solvers:
            errors.append(f"EIGEN_SOLVER 必须是 {solvers} 之一")

        for name in ('JACOBI_TOLERANCE', 'SYMMETRY_TOLERANCE', 'STIEFEL_TOLERANCE',
                     'COSINE_TOLERANCE', 'COINCIDENCE_TOLERANCE', 'FRAGILE_MARGIN',
                     'SEARCH_ZERO_BAND'):
            if getattr(cls, name) <= 0:
                errors.append(f"{name} 必须为正数")

        if cls.GAP_TOLERANCE < 0:
            errors.append("GAP_TOLERANCE 不能为负数")
        if cls.SEARCH_GRID_POINTS < 3:
            errors.append("SEARCH_GRID_POINTS 不能小于 3")
        if cls.SEARCH_REFINEMENT_ROUNDS < 0:
            errors.append("SEARCH_REFINEMENT_ROUNDS 不能为负数")
        if cls.SEARCH_SHRINK_FACTOR <= 1:
            errors.append("SEARCH_SHRINK_FACTOR 必须大于 1")
        if cls.EXPERIMENT_WORKERS < 1:
            errors.append("EXPERIMENT_WORKERS 不能小于 1")
        if cls.REGULAR_GRAPH_MAX_ATTEMPTS < 1:
            errors.append("REGULAR_GRAPH_MAX_ATTEMPTS 不能小于 1")

        if errors:
            raise ConfigurationError("配置验证失败:\n" + "\n".join(errors),
                                     details={'errors': errors})

    @classmethod
    def get_config_dict(cls) -> Dict[str, Any]:
        """获取配置字典"""
        config_dict = {}
        for key in dir(cls):
            if key.isupper() and not key.startswith('_'):
                config_dict[key] = getattr(cls, key)
        return config_dict
