"""
统一配置管理器

提供统一的配置加载和管理功能
"""

import os
import logging
from typing import Dict, Any, Optional, Type

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

ENV_VARIABLE = 'SPECTRAL_DK_ENV'


class ConfigManager:
    """配置管理器"""

    _instance = None
    _config_loaded = False

    def __new__(cls):
        """单例模式"""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._active = None
        return cls._instance

    def __init__(self):
        """初始化配置管理器"""
        if not self._config_loaded:
            self.load_environment_variables()
            ConfigManager._config_loaded = True

    def load_environment_variables(self):
        """加载环境变量"""
        # 按优先级加载环境变量文件
        env_files = ['.env.local', '.env', '.env.example']

        for env_file in env_files:
            if os.path.exists(env_file):
                load_dotenv(env_file)
                logger.info(f"已加载环境变量文件: {env_file}")
                break
        else:
            logger.debug("未找到环境变量文件，使用默认配置")

    def activate(self, config_name: Optional[str] = None):
        """选择并初始化运行环境配置"""
        from spectral_dk.config import config

        config_name = config_name or os.getenv(ENV_VARIABLE, 'development')
        config_class = config.get(config_name, config['default'])
        config_class.init_app()
        self._active = config_class
        logger.debug(f"已激活配置: {config_name} ({config_class.__name__})")
        return config_class

    @property
    def settings(self) -> Type:
        """当前生效的配置类（首次访问时按环境变量激活）"""
        if self._active is None:
            self.activate()
        return self._active

    def get_logging_config(self) -> Dict[str, Any]:
        """获取日志配置"""
        settings = self.settings
        return {
            'LOG_LEVEL': settings.LOG_LEVEL,
            'LOG_FILE': settings.LOG_FILE,
            'LOG_FORMAT': settings.LOG_FORMAT,
            'LOG_MAX_BYTES': settings.LOG_MAX_BYTES,
            'LOG_BACKUP_COUNT': settings.LOG_BACKUP_COUNT,
        }

    def get_numerics_config(self) -> Dict[str, Any]:
        """获取数值计算配置"""
        settings = self.settings
        return {
            'EIGEN_SOLVER': settings.EIGEN_SOLVER,
            'JACOBI_TOLERANCE': settings.JACOBI_TOLERANCE,
            'JACOBI_MAX_SWEEPS': settings.JACOBI_MAX_SWEEPS,
            'SYMMETRY_TOLERANCE': settings.SYMMETRY_TOLERANCE,
            'STIEFEL_TOLERANCE': settings.STIEFEL_TOLERANCE,
            'COSINE_TOLERANCE': settings.COSINE_TOLERANCE,
            'COINCIDENCE_TOLERANCE': settings.COINCIDENCE_TOLERANCE,
            'FRAGILE_MARGIN': settings.FRAGILE_MARGIN,
            'GAP_TOLERANCE': settings.GAP_TOLERANCE,
        }

    def get_search_config(self) -> Dict[str, Any]:
        """获取仿射搜索配置"""
        settings = self.settings
        return {
            'SEARCH_GRID_POINTS': settings.SEARCH_GRID_POINTS,
            'SEARCH_REFINEMENT_ROUNDS': settings.SEARCH_REFINEMENT_ROUNDS,
            'SEARCH_ZERO_BAND': settings.SEARCH_ZERO_BAND,
            'SEARCH_SHRINK_FACTOR': settings.SEARCH_SHRINK_FACTOR,
        }

    def get_experiment_config(self) -> Dict[str, Any]:
        """获取实验配置"""
        settings = self.settings
        return {
            'DEFAULT_SEED': settings.DEFAULT_SEED,
            'EXPERIMENT_N': settings.EXPERIMENT_N,
            'EXPERIMENT_D': settings.EXPERIMENT_D,
            'EXPERIMENT_REPLICATES': settings.EXPERIMENT_REPLICATES,
            'EXPERIMENT_R': settings.EXPERIMENT_R,
            'EXPERIMENT_J': settings.EXPERIMENT_J,
            'EXPERIMENT_WORKERS': settings.EXPERIMENT_WORKERS,
            'REGULAR_GRAPH_MAX_ATTEMPTS': settings.REGULAR_GRAPH_MAX_ATTEMPTS,
        }

    def get_all_config(self) -> Dict[str, Any]:
        """获取所有配置"""
        all_config = {}
        all_config.update(self.get_logging_config())
        all_config.update(self.get_numerics_config())
        all_config.update(self.get_search_config())
        all_config.update(self.get_experiment_config())
        return all_config


# 创建全局配置管理器实例
config_manager = ConfigManager()
