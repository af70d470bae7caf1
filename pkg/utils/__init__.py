# 包初始化文件
"""
工具函数包初始化文件。
导出异常类型；JSON 编解码与格式化请从 utils.json_codec、utils.formatting 导入。
"""
from .errors import (
    DomainError,
    InputError,
    InvariantError,
    RealityViolation,
    ScalarError,
)

__all__ = [
    'DomainError',
    'InputError',
    'InvariantError',
    'RealityViolation',
    'ScalarError',
]
