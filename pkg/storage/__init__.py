# 包初始化文件
"""
存储模块包初始化文件。
"""
from .result_storage import ResultMetadata, ResultStorage, result_key

__all__ = [
    'ResultMetadata',
    'ResultStorage',
    'result_key',
]
