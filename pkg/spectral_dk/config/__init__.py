"""
配置管理模块

按环境名选择配置类：development（默认）、testing（缩减实验规模）、production（完整实验规模）
"""

from .base import BaseConfig
from .development import DevelopmentConfig
from .production import ProductionConfig
from .testing import TestingConfig

# 环境名 -> 配置类
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': DevelopmentConfig
}

# 命令行 --env 可选的环境名
ENVIRONMENT_NAMES = tuple(name for name in config if name != 'default')

__all__ = [
    'config',
    'ENVIRONMENT_NAMES',
    'BaseConfig',
    'DevelopmentConfig',
    'TestingConfig',
    'ProductionConfig'
]
