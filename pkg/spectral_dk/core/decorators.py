"""
装饰器模块

提供各种功能装饰器
"""

import time
import functools
import logging

from spectral_dk.core.exceptions import SpectralDKError

logger = logging.getLogger(__name__)


def log_execution_time(func):
    """记录函数执行时间的装饰器"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        try:
            result = func(*args, **kwargs)
            execution_time = time.perf_counter() - start_time
            logger.info(f"{func.__name__} 执行时间: {execution_time:.3f}s")
            return result
        except Exception as e:
            execution_time = time.perf_counter() - start_time
            logger.error(f"{func.__name__} 执行失败 (耗时: {execution_time:.3f}s): {e}")
            raise
    return wrapper


def retry(max_attempts=3, exceptions=(Exception,), final_error=None):
    """重试装饰器（不等待），次数用尽后抛出 final_error，未指定时抛出最后一次的异常"""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            last_error = None
            for attempt in range(1, max_attempts + 1):
                try:
                    return func(*args, **kwargs)
                except exceptions as e:
                    last_error = e
                    logger.debug(f"{func.__name__} 第 {attempt} 次尝试失败: {e}")

            logger.error(f"{func.__name__} 重试 {max_attempts} 次后仍然失败: {last_error}")
            if final_error is not None:
                raise final_error(f"{func.__name__} 重试 {max_attempts} 次后仍然失败",
                                  details={'attempts': max_attempts}) from last_error
            raise last_error
        return wrapper
    return decorator


def wrap_unexpected(error_class=SpectralDKError, message="计算失败"):
    """把非领域异常包装为指定的领域异常，领域异常原样抛出"""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except SpectralDKError:
                raise
            except (ValueError, ArithmeticError) as e:
                logger.error(f"函数 {func.__name__} 发生异常: {e}", exc_info=True)
                raise error_class(f"{message}: {e}") from e
        return wrapper
    return decorator
