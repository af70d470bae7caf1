# 包初始化文件
"""
外代数包初始化文件。
导出 k-形式、标架与 Hodge 星等运算。
"""
from .forms import DIMENSION, KForm, basis_monomials, complement, sort_sign, wedge
from .frame import BasisFrame, VOLUME_ORDER, Vector, flat, form_inner, hodge_star, sharp

__all__ = [
    'DIMENSION',
    'KForm',
    'basis_monomials',
    'complement',
    'sort_sign',
    'wedge',
    'BasisFrame',
    'VOLUME_ORDER',
    'Vector',
    'flat',
    'form_inner',
    'hodge_star',
    'sharp',
]
