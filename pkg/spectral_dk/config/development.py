"""
开发环境配置

用于本地开发和调试
"""

import logging

from .base import BaseConfig


class DevelopmentConfig(BaseConfig):
    """开发环境配置类"""

    DEBUG = True
    TESTING = False

    LOG_LEVEL = 'DEBUG'

    @classmethod
    def init_app(cls):
        """初始化开发环境配置"""
        super().init_app()
        logging.getLogger(__name__).debug(
            f"开发环境配置已加载: 求解器={cls.EIGEN_SOLVER}, 网格点数={cls.SEARCH_GRID_POINTS}"
        )
