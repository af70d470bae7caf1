# 包初始化文件
"""
标量内核包初始化文件。
导出数值后端、参数多项式环与精确平方根。
"""
from .backends import (
    EXACT,
    ExactBackend,
    FloatBackend,
    Scalar,
    ScalarBackend,
    SymbolicBackend,
    exact_sqrt,
    format_rational,
    get_backend,
    to_rational,
)
from .param_poly import ParamRing

__all__ = [
    'EXACT',
    'ExactBackend',
    'FloatBackend',
    'Scalar',
    'ScalarBackend',
    'SymbolicBackend',
    'ParamRing',
    'exact_sqrt',
    'format_rational',
    'get_backend',
    'to_rational',
]
