# 包初始化文件
"""
实现包初始化文件。
导出参数族、求解器与批处理流水线。
"""
from .family import (
    HERMITIAN_LABEL,
    PARA_LABEL,
    PARAMETER_NAMES,
    FamilyParams,
    family_algebra,
    family_ring,
    rho_a_closed_form,
)
from .solvers import (
    HERMITIAN_MODES,
    RealizationResult,
    RoundTrip,
    solve,
    solve_hermitian,
    solve_para,
    verify_roundtrip,
)
from .pipeline import RealizationPipeline, create_pipeline

__all__ = [
    'HERMITIAN_LABEL',
    'PARA_LABEL',
    'PARAMETER_NAMES',
    'FamilyParams',
    'family_algebra',
    'family_ring',
    'rho_a_closed_form',
    'HERMITIAN_MODES',
    'RealizationResult',
    'RoundTrip',
    'solve',
    'solve_hermitian',
    'solve_para',
    'verify_roundtrip',
    'RealizationPipeline',
    'create_pipeline',
]
