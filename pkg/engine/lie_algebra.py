# 四维李代数：结构常数、Jacobi 亏量、Nijenhuis 张量与 CE 微分
"""
李代数模块。

结构常数按 [Ψ_i, Ψ_j] = Σ_k c[i, j, k] Ψ_k 存放在 4×4×4 对象数组中，
指标从 0 开始。度量与 J 由模型空间给出，结构常数只描述括号。
"""
import logging
from dataclasses import dataclass
from typing import Any, Mapping, Optional, Tuple

import numpy as np

from exterior import DIMENSION, KForm, Vector, basis_monomials, wedge
from models.model_space import ModelKind, ModelSpace
from scalars import ScalarBackend
from scalars import linalg
from utils.errors import DomainError, RealityViolation

logger = logging.getLogger(__name__)

BASES = ("para", "hermitian-Z", "hermitian-e")


@dataclass(frozen=True, eq=False)
class LieAlgebra4:
    """
    四维李代数

    Attributes:
        constants: 结构常数 c[i, j, k]
        backend: 系数后端
        basis: "para"、"hermitian-Z"（Ψ 标架）或 "hermitian-e"（实基）
        label: 分类标签，仅作说明
    """

    constants: np.ndarray
    backend: ScalarBackend
    basis: str = "para"
    label: Optional[str] = None

    def __post_init__(self):
        if self.constants.shape != (DIMENSION, DIMENSION, DIMENSION):
            raise DomainError("结构常数必须是 4×4×4 数组")
        if self.basis not in BASES:
            raise DomainError(f"未知的基: {self.basis}")
        for i in range(DIMENSION):
            for j in range(i, DIMENSION):
                for k in range(DIMENSION):
                    if not self.backend.is_zero(self.constants[i, j, k] + self.constants[j, i, k]):
                        raise DomainError(f"结构常数在 ({i + 1}, {j + 1}) 上不反对称")

    @classmethod
    def from_brackets(cls, backend: ScalarBackend,
                      brackets: Mapping[Tuple[int, int], Mapping[int, Any]],
                      basis: str = "para", label: Optional[str] = None) -> "LieAlgebra4":
        """
        由括号表构造，未列出的括号为 0

        Args:
            backend: 系数后端
            brackets: {(i, j): {k: c_ij^k}}，指标从 0 开始，(j, i) 由反对称补全
            basis: 基的名称
            label: 分类标签

        Returns:
            李代数
        """
        constants = linalg.zeros(backend, DIMENSION, DIMENSION, DIMENSION)
        for (i, j), row in brackets.items():
            if i == j:
                raise DomainError("[Ψ_i, Ψ_i] 必须为 0")
            for k, value in row.items():
                value = backend.coerce(value)
                constants[i, j, k] = value
                constants[j, i, k] = -value
        return cls(constants, backend, basis, label)

    @classmethod
    def abelian(cls, backend: ScalarBackend, basis: str = "para") -> "LieAlgebra4":
        return cls(linalg.zeros(backend, DIMENSION, DIMENSION, DIMENSION), backend, basis, None)

    @property
    def model_kind(self) -> ModelKind:
        return ModelKind.PARA if self.basis == "para" else ModelKind.HERMITIAN

    def basis_bracket(self, i: int, j: int) -> Vector:
        return Vector(tuple(self.constants[i, j, k] for k in range(DIMENSION)), self.backend)

    def bracket(self, x: Vector, y: Vector) -> Vector:
        components = []
        for k in range(DIMENSION):
            total = self.backend.zero
            for i in range(DIMENSION):
                for j in range(DIMENSION):
                    total = total + x[i] * y[j] * self.constants[i, j, k]
            components.append(total)
        return Vector(tuple(components), self.backend)

    def to_backend(self, backend: ScalarBackend) -> "LieAlgebra4":
        return LieAlgebra4(linalg.convert(self.constants, backend), backend, self.basis, self.label)

    def with_constant(self, i: int, j: int, k: int, value: Any) -> "LieAlgebra4":
        """替换 c_ij^k（同时改写 c_ji^k）后的新代数"""
        constants = self.constants.copy()
        value = self.backend.coerce(value)
        constants[i, j, k] = value
        constants[j, i, k] = -value
        return LieAlgebra4(constants, self.backend, self.basis, self.label)

    def is_abelian(self) -> bool:
        return linalg.all_zero(self.backend, self.constants.flat)


def matching_model(algebra: LieAlgebra4, model: ModelSpace) -> ModelSpace:
    """
    把模型换到代数所在的后端

    Raises:
        DomainError: 代数写在实基上
    """
    if algebra.basis == "hermitian-e":
        raise DomainError("实基下的结构常数只用于输出，几何计算需要 Ψ 标架")
    if model.backend is algebra.backend or model.backend == algebra.backend:
        return model
    return model.with_backend(algebra.backend)


def jacobi_defect(algebra: LieAlgebra4) -> np.ndarray:
    """
    Jacobi 亏量 [[x,y],z] + [[y,z],x] + [[z,x],y]

    Returns:
        D[i, j, l, m]：Ψ_i、Ψ_j、Ψ_l 对应的亏量在 Ψ_m 上的分量
    """
    c = algebra.constants
    backend = algebra.backend

    def nested(i, j, l, m):
        total = backend.zero
        for k in range(DIMENSION):
            total = total + c[i, j, k] * c[k, l, m]
        return total

    defect = linalg.zeros(backend, DIMENSION, DIMENSION, DIMENSION, DIMENSION)
    for i, j, l, m in np.ndindex(defect.shape):
        defect[i, j, l, m] = nested(i, j, l, m) + nested(j, l, i, m) + nested(l, i, j, m)
    return defect


def nijenhuis(algebra: LieAlgebra4, model: ModelSpace) -> np.ndarray:
    """
    Nijenhuis 张量 N(x,y) = [x,y] − sJ[Jx,y] − sJ[x,Jy] + s[Jx,Jy]，J² = s·Id

    Returns:
        N[i, j, m]：N(Ψ_i, Ψ_j) 在 Ψ_m 上的分量
    """
    model = matching_model(algebra, model)
    backend = algebra.backend
    J = model.J
    sign = backend.coerce(model.sign)
    columns = [Vector(tuple(J[k, j] for k in range(DIMENSION)), backend) for j in range(DIMENSION)]

    def apply_J(v: Vector) -> Vector:
        return Vector(tuple(linalg.apply(J, v.components)), backend)

    result = linalg.zeros(backend, DIMENSION, DIMENSION, DIMENSION)
    for i in range(DIMENSION):
        for j in range(DIMENSION):
            x, y = Vector.basis(backend, i), Vector.basis(backend, j)
            Jx, Jy = columns[i], columns[j]
            value = (
                algebra.bracket(x, y)
                + apply_J(algebra.bracket(Jx, y)).scale(-sign)
                + apply_J(algebra.bracket(x, Jy)).scale(-sign)
                + algebra.bracket(Jx, Jy).scale(sign)
            )
            for m in range(DIMENSION):
                result[i, j, m] = value[m]
    return result


def _basis_differentials(algebra: LieAlgebra4) -> Tuple[KForm, ...]:
    """dΨ^i = −Σ_{j<k} c_jk^i Ψ^j∧Ψ^k"""
    backend = algebra.backend
    return tuple(
        KForm.from_dict(backend, 2, {
            (j, k): -algebra.constants[j, k, i] for j, k in basis_monomials(2)
        })
        for i in range(DIMENSION)
    )


def ce_differential(algebra: LieAlgebra4, omega: KForm) -> KForm:
    """
    左不变形式上的 Chevalley–Eilenberg 微分

    由 dΨ^i(Ψ_j, Ψ_k) = −Ψ^i([Ψ_j, Ψ_k]) 出发按反导子法则延拓。

    Args:
        algebra: 李代数
        omega: k-形式（k ≤ 3）

    Returns:
        (k+1)-形式

    Raises:
        DomainError: k = 4
    """
    backend = algebra.backend
    if omega.degree >= DIMENSION:
        raise DomainError("degree exceeds dimension")
    differentials = _basis_differentials(algebra)
    result = KForm.zero(backend, omega.degree + 1)
    for monomial, value in omega.items():
        result = result + _monomial_differential(backend, differentials, monomial).scale(value)
    return result


def _monomial_differential(backend: ScalarBackend, differentials, monomial) -> KForm:
    total = KForm.zero(backend, len(monomial) + 1)
    for position, index in enumerate(monomial):
        term = None
        for other_position, other in enumerate(monomial):
            factor = differentials[index] if other_position == position else KForm.monomial(backend, other)
            term = factor if term is None else wedge(term, factor)
        total = total - term if position % 2 else total + term
    return total


def change_basis(algebra: LieAlgebra4, matrix: np.ndarray, basis: Optional[str] = None) -> LieAlgebra4:
    """
    新基 f_i = Σ_a M[a, i] Ψ_a 下的结构常数

    Args:
        algebra: 李代数
        matrix: 可逆 4×4 矩阵 M
        basis: 新基的名称，默认沿用原名称

    Returns:
        c′_ij^k = Σ (M⁻¹)[k, m] M[a, i] M[b, j] c_ab^m
    """
    backend = algebra.backend
    M = linalg.convert(matrix, backend)
    M_inv = linalg.inverse(backend, M)
    c = algebra.constants
    constants = linalg.zeros(backend, DIMENSION, DIMENSION, DIMENSION)
    for i in range(DIMENSION):
        for j in range(i + 1, DIMENSION):
            image = [backend.zero] * DIMENSION
            for a in range(DIMENSION):
                if backend.is_zero(M[a, i]):
                    continue
                for b in range(DIMENSION):
                    if backend.is_zero(M[b, j]):
                        continue
                    weight = M[a, i] * M[b, j]
                    for m in range(DIMENSION):
                        image[m] = image[m] + weight * c[a, b, m]
            for k in range(DIMENSION):
                value = backend.zero
                for m in range(DIMENSION):
                    value = value + M_inv[k, m] * image[m]
                constants[i, j, k] = value
                constants[j, i, k] = -value
    return LieAlgebra4(constants, backend, basis or algebra.basis, algebra.label)


def conjugate_bracket(algebra: LieAlgebra4, element) -> LieAlgebra4:
    """
    沿线性映射 W 搬运括号：[x, y]′ = W⁻¹[Wx, Wy]

    Args:
        algebra: 李代数
        element: UnitaryElement 或 4×4 矩阵

    Returns:
        度量与 J 不动、括号改变后的李代数
    """
    matrix = getattr(element, "matrix", element)
    return change_basis(algebra, matrix)


def reality_defect(algebra: LieAlgebra4, model: ModelSpace) -> np.ndarray:
    """
    conj([x, y]) − [x̄, ȳ] 在基向量上的分量

    Returns:
        D[i, j, k] = c_{σi σj}^{σk} − conj(c_ij^k)，σ 为共轭置换
    """
    backend = algebra.backend
    sigma = model.conj_perm
    c = algebra.constants
    defect = linalg.zeros(backend, DIMENSION, DIMENSION, DIMENSION)
    for i, j, k in np.ndindex(defect.shape):
        defect[i, j, k] = c[sigma[i], sigma[j], sigma[k]] - backend.conjugate(c[i, j, k])
    return defect


def is_real_bracket(algebra: LieAlgebra4, model: ModelSpace) -> bool:
    """括号是否来自一个实李代数"""
    return linalg.all_zero(algebra.backend, reality_defect(algebra, model).flat)


def real_structure_constants(algebra: LieAlgebra4, model: ModelSpace) -> LieAlgebra4:
    """
    底层实李代数在实基 e 下的结构常数

    Raises:
        RealityViolation: 括号不来自实李代数
    """
    if not is_real_bracket(algebra, model):
        raise RealityViolation("括号不满足 conj([x,y]) = [x̄,ȳ]")
    if not model.is_hermitian:
        return algebra
    backend = algebra.backend
    to_real = linalg.convert(model.to_real, backend)
    return change_basis(algebra, linalg.inverse(backend, to_real), basis="hermitian-e")
