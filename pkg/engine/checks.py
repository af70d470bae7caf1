# 残差校验套件
"""
校验模块。

check_suite 对一个李代数运行完整的几何流水线，把每一条恒等式写成
残差数组并汇总为 VerificationReport。校验失败写进报告，不抛异常。

残差的判定：
- 精确 / 参数多项式后端：所有分量恒等于 0
- 浮点后端：最大模长不超过容差
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Optional, Tuple

import numpy as np

from engine.connection import (
    CurvatureData,
    anti_lee_form,
    curvature,
    is_integrable,
    weyl_connection,
)
from engine.lie_algebra import (
    LieAlgebra4,
    ce_differential,
    jacobi_defect,
    matching_model,
    nijenhuis,
    reality_defect,
)
from exterior import DIMENSION, KForm
from models.model_space import ModelSpace
from scalars import ScalarBackend
from scalars import linalg

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Residual:
    """
    单条残差

    Attributes:
        name: 残差名称
        max_abs: 最大模长（含未定元的多项式记为 inf）
        expression: 第一个非零分量的文字形式，全零时为 "0"
        passed: 是否通过
    """

    name: str
    max_abs: float
    expression: str
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    """
    校验报告

    Attributes:
        residuals: 按计算顺序排列的残差
        passed: 全部残差是否通过
        backend: 后端名称
        tolerance: 浮点容差
        notes: 附加说明（如平凡 Weyl 结构）
        rho_a: 流水线算出的 ρ_a
        scalar_curvature: 标量曲率
    """

    residuals: Tuple[Residual, ...]
    passed: bool
    backend: str
    tolerance: float
    notes: Tuple[str, ...] = ()
    rho_a: Optional[KForm] = field(default=None, compare=True)
    scalar_curvature: Optional[Any] = field(default=None, compare=False)

    def residual(self, name: str) -> Optional[Residual]:
        for item in self.residuals:
            if item.name == name:
                return item
        return None

    @property
    def failures(self) -> Tuple[str, ...]:
        return tuple(item.name for item in self.residuals if not item.passed)

    def with_residual(self, residual: Residual) -> "VerificationReport":
        residuals = tuple(r for r in self.residuals if r.name != residual.name) + (residual,)
        return replace(self, residuals=residuals, passed=all(r.passed for r in residuals))

    def with_note(self, note: str) -> "VerificationReport":
        return replace(self, notes=self.notes + (note,))


def make_residual(name: str, backend: ScalarBackend, values: Iterable[Any],
                  tolerance: float = DEFAULT_TOLERANCE) -> Residual:
    """
    把残差分量汇总成 Residual

    Args:
        name: 残差名称
        backend: 分量所在后端
        values: 残差分量
        tolerance: 浮点后端的容差

    Returns:
        Residual
    """
    values = list(values)
    nonzero = [v for v in values if not backend.is_zero(v)]
    max_abs = max((backend.magnitude(v) for v in values), default=0.0)
    if backend.exact:
        passed = not nonzero
        expression = backend.describe(nonzero[0]) if nonzero else "0"
    else:
        passed = max_abs <= tolerance
        expression = f"{max_abs:.3e}"
    if not passed:
        logger.debug("残差 %s 未通过: %s", name, expression)
    return Residual(name, float(max_abs), expression, passed)


def form_residual(name: str, a: KForm, b: KForm, tolerance: float = DEFAULT_TOLERANCE) -> Residual:
    """两个同后端形式之差的残差"""
    return make_residual(name, a.backend, (a - b).coeffs, tolerance)


def _torsion(connection, algebra: LieAlgebra4):
    gamma, c = connection.gamma, algebra.constants
    for i, j, k in np.ndindex(gamma.shape):
        yield gamma[i, j, k] - gamma[j, i, k] - c[i, j, k]


def _compatibility(connection, model: ModelSpace):
    """−g(∇_i Ψ_j, Ψ_l) − g(Ψ_j, ∇_i Ψ_l) + 2φ_i g_jl"""
    backend = connection.backend
    gamma, g = connection.gamma, model.frame.metric
    phi = connection.phi
    two = backend.coerce(2)
    for i, j, l in np.ndindex(DIMENSION, DIMENSION, DIMENSION):
        total = backend.zero
        for k in range(DIMENSION):
            total = total - gamma[i, j, k] * g[k, l] - gamma[i, l, k] * g[j, k]
        if phi is not None:
            total = total + two * phi[i] * g[j, l]
        yield total


def _parallel_J(connection, model: ModelSpace):
    J = model.J
    for i in range(DIMENSION):
        A = connection.operator(i)
        yield from (linalg.matmul(A, J) - linalg.matmul(J, A)).flat


def _antisymmetry(R):
    for i, j, m, l in np.ndindex(R.shape):
        yield R[i, j, m, l] + R[j, i, m, l]


def _bianchi(R):
    for i, j, m, l in np.ndindex(R.shape):
        yield R[i, j, m, l] + R[j, m, i, l] + R[m, i, j, l]


def _weyl_trace(data: CurvatureData, model: ModelSpace):
    """R(x,y,z,w) + R(x,y,w,z) + ρ_a(x,y)g(z,w)，维数 4"""
    R, g = data.R, model.frame.metric
    for i, j, m, l in np.ndindex(R.shape):
        yield R[i, j, m, l] + R[i, j, l, m] + data.ricci_alt[i, j] * g[m, l]


def _kahler_curvature(data: CurvatureData, model: ModelSpace, backend: ScalarBackend):
    """R(x,y,Jz,Jw) + s·R(x,y,z,w)"""
    R, J = data.R, model.J
    sign = backend.coerce(model.sign)
    for i, j, m, l in np.ndindex(R.shape):
        total = sign * R[i, j, m, l]
        for a in range(DIMENSION):
            if backend.is_zero(J[a, m]):
                continue
            for b in range(DIMENSION):
                if backend.is_zero(J[b, l]):
                    continue
                total = total + J[a, m] * J[b, l] * R[i, j, a, b]
        yield total


def check_suite(algebra: LieAlgebra4, model: ModelSpace,
                tolerance: float = DEFAULT_TOLERANCE) -> VerificationReport:
    """
    完整校验：Jacobi、可积性、Weyl 联络的各项性质、曲率对称性与 ρ_a 的三种算法

    Args:
        algebra: 李代数
        model: 模型空间
        tolerance: 浮点后端的容差

    Returns:
        VerificationReport；J 不可积时只报告不依赖 Weyl 联络的残差
    """
    model = matching_model(algebra, model)
    backend = algebra.backend

    def residual(name, values):
        return make_residual(name, backend, values, tolerance)

    residuals = [
        residual("jacobi", jacobi_defect(algebra).flat),
        residual("nijenhuis", nijenhuis(algebra, model).flat),
    ]
    if model.is_hermitian:
        residuals.append(residual("reality", reality_defect(algebra, model).flat))
    notes = []

    if not is_integrable(algebra, model):
        notes.append("structure not integrable")
        logger.info("J 不可积，跳过 Weyl 联络相关校验")
        return VerificationReport(tuple(residuals), False, backend.name, tolerance, tuple(notes))

    connection = weyl_connection(algebra, model)
    data = curvature(connection, algebra, model)
    rho_a = data.rho_a_form

    # ρ_a = −s·dJδΩ = −2dφ
    anti_lee_route = ce_differential(algebra, anti_lee_form(algebra, model))
    anti_lee_route = anti_lee_route.scale(-1 if model.sign > 0 else 1)
    phi_route = ce_differential(algebra, connection.phi).scale(-2)

    residuals.extend([
        residual("torsion", _torsion(connection, algebra)),
        residual("weyl_compatibility", _compatibility(connection, model)),
        residual("kahler_parallel", _parallel_J(connection, model)),
        residual("curvature_antisymmetry", _antisymmetry(data.R)),
        residual("first_bianchi", _bianchi(data.R)),
        residual("weyl_trace", _weyl_trace(data, model)),
        residual("kahler_curvature", _kahler_curvature(data, model, backend)),
        form_residual("rho_a_vs_anti_lee", rho_a, anti_lee_route, tolerance),
        form_residual("rho_a_vs_dphi", rho_a, phi_route, tolerance),
    ])

    if rho_a.is_zero():
        notes.append("trivial Weyl structure")
    passed = all(item.passed for item in residuals)
    logger.info("校验完成: %s（%d 项残差）", "通过" if passed else "未通过", len(residuals))
    return VerificationReport(
        residuals=tuple(residuals),
        passed=passed,
        backend=backend.name,
        tolerance=tolerance,
        notes=tuple(notes),
        rho_a=rho_a,
        scalar_curvature=data.scalar_curvature,
    )
