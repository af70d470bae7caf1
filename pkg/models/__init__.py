# 包初始化文件
"""
模型空间包初始化文件。
导出 Hermitian / para-Hermitian 模型空间、2-形式分解与结构群作用。
"""
from .model_space import (
    HYPERBOLIC_METRIC,
    ModelKind,
    ModelSpace,
    OrbitInvariants,
    SymTwoSplit,
    TwoFormSplit,
    act_on_form,
    act_on_sym,
    build_model,
    conjugate_form,
    integrability_predicates,
    is_real_form,
    metric_trace,
    orbit_invariants,
    projection_ranks,
    split_sym_two_tensor,
    split_two_form,
)
from .unitary import UnitaryElement, align_hermitian, induced_action, normalize_theta1

__all__ = [
    'HYPERBOLIC_METRIC',
    'ModelKind',
    'ModelSpace',
    'OrbitInvariants',
    'SymTwoSplit',
    'TwoFormSplit',
    'act_on_form',
    'act_on_sym',
    'build_model',
    'conjugate_form',
    'integrability_predicates',
    'is_real_form',
    'metric_trace',
    'orbit_invariants',
    'projection_ranks',
    'split_sym_two_tensor',
    'split_two_form',
    'UnitaryElement',
    'align_hermitian',
    'induced_action',
    'normalize_theta1',
]
