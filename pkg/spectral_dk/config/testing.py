"""
测试环境配置

用于单元测试和集成测试
"""

import logging

from .base import BaseConfig


class TestingConfig(BaseConfig):
    """测试环境配置类"""

    __test__ = False

    DEBUG = False
    TESTING = True

    # 测试时最小化日志
    LOG_LEVEL = 'ERROR'
    LOG_FILE = None

    # 固定种子，保证测试可复现
    DEFAULT_SEED = 12345

    # CI 缩减规模: n=60, d=6, 10 个重复
    EXPERIMENT_N = 60
    EXPERIMENT_D = 6
    EXPERIMENT_REPLICATES = 10

    @classmethod
    def init_app(cls):
        """初始化测试环境配置（只输出到控制台）"""
        cls.validate_config()
        logging.getLogger('spectral_dk').setLevel(logging.ERROR)
