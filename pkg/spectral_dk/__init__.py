"""
spectral-dk

基于多项式 / 仿射谱变换的扩展 Davis-Kahan 子空间距离界，
以及随机 d-正则图上 L 与 L_sym 的特征向量比较实验
"""

__version__ = "1.0.0"

import logging

# 配置日志
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

logger = logging.getLogger(__name__)


def create_context(config_name=None):
    """
    运行上下文工厂函数

    Args:
        config_name: 配置环境名称 ('development', 'production', 'testing')，
            默认读取 SPECTRAL_DK_ENV

    Returns:
        type: 已激活的配置类
    """
    from spectral_dk.core.config_manager import config_manager

    settings = config_manager.activate(config_name)
    logger.debug(f"运行上下文已创建: {settings.__name__}")
    return settings
