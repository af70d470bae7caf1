# 包初始化文件
"""
几何引擎包初始化文件。
导出李代数、联络、曲率与校验套件。
"""
from .lie_algebra import (
    BASES,
    LieAlgebra4,
    ce_differential,
    change_basis,
    conjugate_bracket,
    is_real_bracket,
    jacobi_defect,
    matching_model,
    nijenhuis,
    reality_defect,
    real_structure_constants,
)
from .connection import (
    CurvatureData,
    InvariantConnection,
    anti_lee_form,
    curvature,
    is_integrable,
    lee_form,
    levi_civita,
    weyl_connection,
    weyl_one_form,
)
from .checks import (
    DEFAULT_TOLERANCE,
    Residual,
    VerificationReport,
    check_suite,
    form_residual,
    make_residual,
)

__all__ = [
    'BASES',
    'LieAlgebra4',
    'ce_differential',
    'change_basis',
    'conjugate_bracket',
    'is_real_bracket',
    'jacobi_defect',
    'matching_model',
    'nijenhuis',
    'reality_defect',
    'real_structure_constants',
    'CurvatureData',
    'InvariantConnection',
    'anti_lee_form',
    'curvature',
    'is_integrable',
    'lee_form',
    'levi_civita',
    'weyl_connection',
    'weyl_one_form',
    'DEFAULT_TOLERANCE',
    'Residual',
    'VerificationReport',
    'check_suite',
    'form_residual',
    'make_residual',
]
