"""
生产环境配置

用于完整规模的实验复现
"""

import os
import logging
from logging.handlers import RotatingFileHandler

from .base import BaseConfig


class ProductionConfig(BaseConfig):
    """生产环境配置类"""

    DEBUG = False
    TESTING = False

    LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING')
    LOG_FILE = os.getenv('LOG_FILE')

    @classmethod
    def init_app(cls):
        """初始化生产环境配置"""
        super().init_app()

        if not cls.LOG_FILE:
            return

        log_dir = os.path.dirname(cls.LOG_FILE)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)

        # 配置文件日志
        file_handler = RotatingFileHandler(
            cls.LOG_FILE,
            maxBytes=cls.LOG_MAX_BYTES,
            backupCount=cls.LOG_BACKUP_COUNT
        )
        file_handler.setFormatter(logging.Formatter(cls.LOG_FORMAT))
        file_handler.setLevel(cls.LOG_LEVEL)

        package_logger = logging.getLogger('spectral_dk')
        package_logger.addHandler(file_handler)
        package_logger.setLevel(cls.LOG_LEVEL)
