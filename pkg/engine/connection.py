# 左不变联络与曲率
"""
联络与曲率模块。

左不变联络由系数 Γ[i, j, k] 给出：∇_{Ψ_i} Ψ_j = Σ_k Γ[i, j, k] Ψ_k。
左不变张量的方向导数为 0，所以 ∇g、∇J 都化为代数表达式。

记 J² = s·Id（para s = +1，Hermitian s = −1），则

- Lee 形式 δΩ = −⋆d⋆Ω，反 Lee 形式 JδΩ
- Weyl 1-形式 φ = ½·s·JδΩ
- Weyl 联络 ∇_x y = ∇^g_x y + φ(x)y + φ(y)x − g(x,y)φ^♯
"""
import logging
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from engine.lie_algebra import LieAlgebra4, ce_differential, matching_model, nijenhuis
from exterior import DIMENSION, KForm, Vector, hodge_star, sharp
from models.model_space import ModelSpace, SymTwoSplit, act_on_form, metric_trace, split_sym_two_tensor
from scalars import ScalarBackend
from scalars import linalg
from utils.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class InvariantConnection:
    """
    左不变联络

    Attributes:
        gamma: Γ[i, j, k]
        backend: 系数后端
        phi: Weyl 联络对应的 1-形式；Levi-Civita 联络为 None
        kind: "levi-civita" 或 "weyl"
    """

    gamma: np.ndarray
    backend: ScalarBackend
    phi: Optional[KForm] = None
    kind: str = "levi-civita"

    def operator(self, i: int) -> np.ndarray:
        """∇_{Ψ_i} 的矩阵 A_i，A_i[k, j] = Γ[i, j, k]"""
        return self.gamma[i].T.copy()

    def covariant(self, x: Vector, y: Vector) -> Vector:
        components = []
        for k in range(DIMENSION):
            total = self.backend.zero
            for i in range(DIMENSION):
                for j in range(DIMENSION):
                    total = total + x[i] * y[j] * self.gamma[i, j, k]
            components.append(total)
        return Vector(tuple(components), self.backend)


def levi_civita(algebra: LieAlgebra4, model: ModelSpace) -> InvariantConnection:
    """
    Koszul 公式：2g(∇_x y, z) = g([x,y],z) − g([y,z],x) + g([z,x],y)

    Args:
        algebra: 李代数
        model: 提供度量的模型空间

    Returns:
        Levi-Civita 联络
    """
    model = matching_model(algebra, model)
    backend = algebra.backend
    g, g_inv = model.frame.metric, model.frame.inverse_metric
    c = algebra.constants

    # C[i, j, l] = g([Ψ_i, Ψ_j], Ψ_l)
    C = linalg.zeros(backend, DIMENSION, DIMENSION, DIMENSION)
    for i, j, l in np.ndindex(C.shape):
        total = backend.zero
        for m in range(DIMENSION):
            total = total + c[i, j, m] * g[m, l]
        C[i, j, l] = total

    half = backend.half
    gamma = linalg.zeros(backend, DIMENSION, DIMENSION, DIMENSION)
    for i, j in np.ndindex(DIMENSION, DIMENSION):
        lowered = [half * (C[i, j, l] - C[j, l, i] + C[l, i, j]) for l in range(DIMENSION)]
        for k in range(DIMENSION):
            total = backend.zero
            for l in range(DIMENSION):
                total = total + lowered[l] * g_inv[l, k]
            gamma[i, j, k] = total
    return InvariantConnection(gamma, backend)


def lee_form(algebra: LieAlgebra4, model: ModelSpace) -> KForm:
    """δΩ = −⋆d⋆Ω"""
    model = matching_model(algebra, model)
    frame = model.frame
    return -hodge_star(frame, ce_differential(algebra, hodge_star(frame, model.omega)))


def anti_lee_form(algebra: LieAlgebra4, model: ModelSpace) -> KForm:
    """JδΩ"""
    model = matching_model(algebra, model)
    return act_on_form(model, lee_form(algebra, model))


def is_integrable(algebra: LieAlgebra4, model: ModelSpace) -> bool:
    return linalg.all_zero(algebra.backend, nijenhuis(algebra, model).flat)


def weyl_one_form(algebra: LieAlgebra4, model: ModelSpace) -> KForm:
    """
    Kähler–Weyl 结构的 1-形式 φ = ½·s·JδΩ

    Raises:
        DomainError: J 不可积
    """
    if not is_integrable(algebra, model):
        raise DomainError("structure not integrable")
    return _weyl_one_form(algebra, model)


def _weyl_one_form(algebra: LieAlgebra4, model: ModelSpace) -> KForm:
    model = matching_model(algebra, model)
    backend = algebra.backend
    factor = backend.half if model.sign > 0 else -backend.half
    return anti_lee_form(algebra, model).scale(factor)


def weyl_connection(algebra: LieAlgebra4, model: ModelSpace) -> InvariantConnection:
    """
    唯一的 Kähler–Weyl 联络 ∇ = ∇^g + φ(x)y + φ(y)x − g(x,y)φ^♯

    Raises:
        DomainError: J 不可积
    """
    phi = weyl_one_form(algebra, model)
    model = matching_model(algebra, model)
    backend = algebra.backend
    g = model.frame.metric
    phi_sharp = sharp(model.frame, phi)
    gamma = levi_civita(algebra, model).gamma.copy()
    for i, j, k in np.ndindex(gamma.shape):
        value = gamma[i, j, k]
        if i == j == k:
            value = value + phi[i] + phi[j]
        elif j == k:
            value = value + phi[i]
        elif i == k:
            value = value + phi[j]
        gamma[i, j, k] = value - g[i, j] * phi_sharp[k]
    logger.debug("已构造 Weyl 联络")
    return InvariantConnection(gamma, backend, phi=phi, kind="weyl")


@dataclass(frozen=True, eq=False)
class CurvatureData:
    """
    曲率数据

    Attributes:
        R: R[i, j, m, l] = g(𝓡(Ψ_i, Ψ_j)Ψ_m, Ψ_l)
        ricci: ρ[x, y] = Tr{z ↦ 𝓡(z, Ψ_x)Ψ_y}
        ricci_sym: ρ_s
        ricci_alt: ρ_a
        rho_a_form: ρ_a 作为 2-形式
        scalar_curvature: τ = g^{ij}ρ_{ij}
        ricci_split: ρ_s 的迹 / S²₀ / S²± 分解
        operators: 𝓡(Ψ_i, Ψ_j) 的矩阵
    """

    R: np.ndarray
    ricci: np.ndarray
    ricci_sym: np.ndarray
    ricci_alt: np.ndarray
    rho_a_form: KForm
    scalar_curvature: Any
    ricci_split: SymTwoSplit
    operators: np.ndarray


def curvature(connection: InvariantConnection, algebra: LieAlgebra4, model: ModelSpace) -> CurvatureData:
    """
    𝓡(x, y) = ∇_x∇_y − ∇_y∇_x − ∇_{[x,y]} 及其 Ricci 张量

    Args:
        connection: 任意左不变联络
        algebra: 李代数
        model: 模型空间

    Returns:
        CurvatureData
    """
    model = matching_model(algebra, model)
    backend = algebra.backend
    g = model.frame.metric
    c = algebra.constants
    A = [connection.operator(i) for i in range(DIMENSION)]

    operators = np.empty((DIMENSION, DIMENSION), dtype=object)
    for i, j in np.ndindex(DIMENSION, DIMENSION):
        value = linalg.matmul(A[i], A[j]) - linalg.matmul(A[j], A[i])
        for k in range(DIMENSION):
            if not backend.is_zero(c[i, j, k]):
                value = value - linalg.scale(A[k], c[i, j, k])
        operators[i, j] = value

    R = linalg.zeros(backend, DIMENSION, DIMENSION, DIMENSION, DIMENSION)
    for i, j, m, l in np.ndindex(R.shape):
        op = operators[i, j]
        total = backend.zero
        for n in range(DIMENSION):
            total = total + op[n, m] * g[n, l]
        R[i, j, m, l] = total

    ricci = linalg.zeros(backend, DIMENSION, DIMENSION)
    for x, y in np.ndindex(ricci.shape):
        total = backend.zero
        for k in range(DIMENSION):
            total = total + operators[k, x][k, y]
        ricci[x, y] = total

    half = backend.half
    ricci_sym = linalg.scale(ricci + ricci.T, half)
    ricci_alt = linalg.scale(ricci - ricci.T, half)
    rho_a_form = KForm.from_dict(backend, 2, {
        (x, y): ricci_alt[x, y] for x in range(DIMENSION) for y in range(x + 1, DIMENSION)
    })
    return CurvatureData(
        R=R,
        ricci=ricci,
        ricci_sym=ricci_sym,
        ricci_alt=ricci_alt,
        rho_a_form=rho_a_form,
        scalar_curvature=metric_trace(model, ricci),
        ricci_split=split_sym_two_tensor(model, ricci_sym),
        operators=operators,
    )
