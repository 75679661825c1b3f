"""
自定义异常类模块

定义谱扰动分析中使用的所有领域异常
"""


class SpectralDKError(Exception):
    """基础异常类"""

    def __init__(self, message, code=None, details=None):
        super().__init__(message)
        self.message = message
        self.code = code
        self.details = details or {}

    def to_dict(self):
        """转换为字典格式"""
        return {
            'error': self.__class__.__name__,
            'message': self.message,
            'code': self.code,
            'details': self.details
        }


class InvalidInput(SpectralDKError):
    """输入数据无效（非有限值、索引越界、参数非法等）"""

    def __init__(self, message="输入数据无效", code="INVALID_INPUT", details=None):
        super().__init__(message, code, details)


class ShapeError(SpectralDKError):
    """矩阵或特征向量块维度不匹配"""

    def __init__(self, message="维度不匹配", code="SHAPE_ERROR", details=None):
        super().__init__(message, code, details)


class DegenerateTransform(SpectralDKError):
    """退化的仿射变换（c1 == 0，谱信息全部丢失）"""

    def __init__(self, message="仿射变换退化: c1 不能为 0", code="DEGENERATE_TRANSFORM", details=None):
        super().__init__(message, code, details)


class GapViolation(SpectralDKError):
    """特征间隙假设不成立"""

    def __init__(self, message="特征间隙假设不成立", code="GAP_VIOLATION", details=None):
        super().__init__(message, code, details)


class NoValidInterval(SpectralDKError):
    """两种区间选择均不满足约束条件"""

    def __init__(self, message="不存在有效的 DK 区间", code="NO_VALID_INTERVAL", details=None,
                 report=None):
        super().__init__(message, code, details)
        self.report = report


class NoFeasibleTransform(SpectralDKError):
    """仿射搜索中没有任何可行的变换"""

    def __init__(self, message="未找到可行的仿射变换", code="NO_FEASIBLE_TRANSFORM", details=None):
        super().__init__(message, code, details)


class DegreeZero(SpectralDKError):
    """图中存在孤立节点"""

    def __init__(self, message="图中存在度为 0 的节点", code="DEGREE_ZERO", details=None):
        super().__init__(message, code, details)


class GenerationFailed(SpectralDKError):
    """随机正则图生成超出重试上限"""

    def __init__(self, message="随机正则图生成失败", code="GENERATION_FAILED", details=None):
        super().__init__(message, code, details)


class ParseError(SpectralDKError):
    """矩阵或边列表文件解析失败"""

    def __init__(self, message="文件解析失败", code="PARSE_ERROR", details=None):
        super().__init__(message, code, details)


class ConfigurationError(SpectralDKError):
    """配置错误异常"""

    def __init__(self, message="配置错误", code="CONFIG_ERROR", details=None):
        super().__init__(message, code, details)
