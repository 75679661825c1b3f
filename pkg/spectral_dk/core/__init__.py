"""
核心功能模块

包含异常处理、常量、验证器、配置管理等核心功能
"""

from .exceptions import (
    SpectralDKError,
    InvalidInput,
    ShapeError,
    DegenerateTransform,
    GapViolation,
    NoValidInterval,
    NoFeasibleTransform,
    DegreeZero,
    GenerationFailed,
    ParseError,
    ConfigurationError
)
from .constants import (
    IntervalChoice,
    NormKind,
    EigenSolver,
    OutputFormat,
    ConstraintName,
    ExitCode,
    ReportSchema,
    ConfigDefaults
)
from .decorators import log_execution_time, wrap_unexpected
from .validators import (
    IntegerValidator,
    FloatValidator,
    ChoiceValidator,
    ensure_finite,
    validate_block_indices
)

__all__ = [
    # 异常处理
    'SpectralDKError',
    'InvalidInput',
    'ShapeError',
    'DegenerateTransform',
    'GapViolation',
    'NoValidInterval',
    'NoFeasibleTransform',
    'DegreeZero',
    'GenerationFailed',
    'ParseError',
    'ConfigurationError',

    # 常量
    'IntervalChoice',
    'NormKind',
    'EigenSolver',
    'OutputFormat',
    'ConstraintName',
    'ExitCode',
    'ReportSchema',
    'ConfigDefaults',

    # 装饰器
    'log_execution_time',
    'wrap_unexpected',

    # 验证器
    'IntegerValidator',
    'FloatValidator',
    'ChoiceValidator',
    'ensure_finite',
    'validate_block_indices'
]
