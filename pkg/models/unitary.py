# 结构群元素及其在 2-形式上的作用
"""
结构群模块。

结构群元素用 2×2 块描述，按需展开为 4×4 矩阵：

- Hermitian：块 A ∈ U(2) 作用在 (Z₁, Z₂) 上，T = diag(A, Ā)
- para：可逆实块 A 作用在 (e₁, e₂) 上，T = diag(A, A^{−T})

诱导作用取拉回 ξ ↦ ξ(T·, T·)，因此 U₁·(U₂·ξ) = (U₂U₁)·ξ。
"""
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Optional, Sequence, Tuple

import numpy as np

from config.config import FLOAT_ATOL
from exterior import DIMENSION, KForm
from models.model_space import ModelKind, ModelSpace, orbit_invariants, split_two_form
from scalars import ScalarBackend, exact_sqrt, get_backend
from scalars import linalg
from utils.errors import DomainError, InvariantError

logger = logging.getLogger(__name__)

ALIGN_TOLERANCE = 1e-9
# |ŝ×t̂|² 低于此值时按对径处理
ANTIPODAL_CUTOFF = 1e-28


@dataclass(frozen=True, eq=False)
class UnitaryElement:
    """
    结构群元素

    Attributes:
        kind: 所属模型
        block: 2×2 块
        backend: 系数后端
    """

    kind: ModelKind
    block: np.ndarray
    backend: ScalarBackend

    @classmethod
    def from_block(cls, kind, backend: ScalarBackend, rows) -> "UnitaryElement":
        block = rows if isinstance(rows, np.ndarray) else linalg.from_rows(backend, rows)
        if block.shape != (2, 2):
            raise DomainError("结构群元素的块必须是 2×2")
        return cls(ModelKind(kind), block, backend)

    @classmethod
    def identity(cls, kind, backend: ScalarBackend) -> "UnitaryElement":
        return cls(ModelKind(kind), linalg.identity(backend, 2), backend)

    @classmethod
    def from_matrix(cls, model: ModelSpace, matrix: np.ndarray) -> "UnitaryElement":
        """
        由 4×4 矩阵恢复结构群元素

        Raises:
            DomainError: 矩阵不具备块结构或不在结构群中
        """
        element = cls(model.kind, matrix[:2, :2].copy(), model.backend)
        if not linalg.equal(model.backend, element.matrix, matrix):
            raise DomainError("not unitary")
        element.check(model)
        return element

    @cached_property
    def matrix(self) -> np.ndarray:
        """展开后的 4×4 矩阵"""
        if self.kind is ModelKind.HERMITIAN:
            lower = linalg.conjugate(self.backend, self.block)
        else:
            lower = linalg.inverse(self.backend, self.block).T
        result = linalg.zeros(self.backend, DIMENSION, DIMENSION)
        result[:2, :2] = self.block
        result[2:, 2:] = lower
        return result

    def compose(self, other: "UnitaryElement") -> "UnitaryElement":
        """矩阵乘积 self·other"""
        return UnitaryElement(self.kind, linalg.matmul(self.block, other.block), self.backend)

    def inverse(self) -> "UnitaryElement":
        return UnitaryElement(self.kind, linalg.inverse(self.backend, self.block), self.backend)

    def to_backend(self, backend: ScalarBackend) -> "UnitaryElement":
        return UnitaryElement(self.kind, linalg.convert(self.block, backend), backend)

    def is_identity(self) -> bool:
        return linalg.equal(self.backend, self.block, linalg.identity(self.backend, 2))

    def check(self, model: ModelSpace):
        """
        校验 T*g = g 且 TJ = JT

        Raises:
            DomainError: 不在结构群中
        """
        if self.kind is not model.kind:
            raise DomainError("not unitary")
        T, g, J = self.matrix, model.frame.metric, model.J
        backend = model.backend
        preserves_metric = linalg.equal(backend, linalg.matmul(linalg.matmul(T.T, g), T), g)
        commutes = linalg.equal(backend, linalg.matmul(T, J), linalg.matmul(J, T))
        if not (preserves_metric and commutes):
            raise DomainError("not unitary")


def induced_action(model: ModelSpace, element: UnitaryElement, xi: KForm) -> KForm:
    """
    结构群在形式上的诱导作用（拉回）

    Args:
        model: 模型空间
        element: 结构群元素
        xi: 任意次形式

    Returns:
        ξ(T·, …, T·)

    Raises:
        DomainError: element 不在结构群中
    """
    element.check(model)
    return xi.pullback(element.matrix)


class _Inexact(Exception):
    """精确路径需要无理数"""


def _sqrt(backend: ScalarBackend, value: Any) -> Any:
    real = backend.real_part(value)
    if backend.exact:
        root = exact_sqrt(real)
        if root is None:
            raise _Inexact()
        return backend.coerce(root)
    return backend.coerce(math.sqrt(max(float(real), 0.0)))


def _float_model(model: ModelSpace) -> ModelSpace:
    return model.with_backend(get_backend("float", FLOAT_ATOL))


def _real_coefficients(model: ModelSpace, values: Sequence[Any]) -> Tuple[Any, ...]:
    backend = model.backend
    return tuple(backend.coerce(backend.real_part(v)) for v in values)


def normalize_theta1(model: ModelSpace, xi: KForm,
                     allow_float: bool = True) -> Tuple[UnitaryElement, KForm]:
    """
    在 (θ₁, θ₂) 平面内旋转，消去 θ₁ 分量

    旋转块 R(t) 作用后 c₁′ = c₁cos2t + c₂sin2t，取 2t = atan2(−c₁, c₂)。
    精确模式下只有 cos t、sin t 都是有理数时才保持精确。

    Args:
        model: para 模型
        xi: 2-形式
        allow_float: 精确旋转不存在时是否退回浮点

    Returns:
        (U, U·ξ)，结果所在后端可能是浮点

    Raises:
        DomainError: 非 para 模型，或需要浮点却不允许
    """
    if model.is_hermitian:
        raise DomainError("normalize_theta1 只适用于 para 模型")
    backend = model.backend
    split = split_two_form(model, xi)
    c1, c2 = _real_coefficients(model, split.c[:2])
    if backend.is_zero(c1):
        return UnitaryElement.identity(model.kind, backend), xi

    rotation = None
    if backend.exact:
        rotation = _exact_rotation(backend, c1, c2)
        if rotation is None:
            if not allow_float:
                raise DomainError("exact rotation unavailable: irrational parameters required")
            logger.warning("θ₁ 归一化需要无理旋转，改用浮点后端")
            model = _float_model(model)
            backend = model.backend
            xi = xi.to_backend(backend)
            c1, c2 = backend.coerce(c1), backend.coerce(c2)

    if rotation is None:
        half_angle = math.atan2(-backend.real_part(c1), backend.real_part(c2)) / 2
        rotation = (backend.coerce(math.cos(half_angle)), backend.coerce(math.sin(half_angle)))

    cos_t, sin_t = rotation
    element = UnitaryElement.from_block(model.kind, backend, [[cos_t, -sin_t], [sin_t, cos_t]])
    normalized = induced_action(model, element, xi)
    residual = split_two_form(model, normalized).c[0]
    if not backend.is_zero(residual) and backend.magnitude(residual) > 1e-12 * max(1.0, xi.max_abs()):
        raise InvariantError("θ₁ 归一化后仍有残差")
    logger.info("θ₁ 分量已通过 (θ₁, θ₂) 平面旋转消去（%s）", backend.name)
    return element, normalized


def _exact_rotation(backend: ScalarBackend, c1, c2):
    radius = exact_sqrt(backend.real_part(c1 * c1 + c2 * c2))
    if radius is None:
        return None
    cos_phi = backend.div(c2, radius)
    one = backend.one
    cos_t = exact_sqrt(backend.real_part(backend.div(one + cos_phi, 2)))
    sin_abs = exact_sqrt(backend.real_part(backend.div(one - cos_phi, 2)))
    if cos_t is None or sin_abs is None:
        return None
    # sin φ 与 −c₁ 同号
    sin_t = backend.coerce(sin_abs)
    if backend.real_part(c1) > 0:
        sin_t = -sin_t
    return backend.coerce(cos_t), sin_t


def _pauli(backend: ScalarBackend, v: Sequence[Any]) -> np.ndarray:
    """H(v) = v₁σz + v₂σy + v₃σx，满足 Λ²₀,₊ 部分的混合块为 i·H(v)"""
    i = backend.imag
    result = linalg.zeros(backend, 2, 2)
    result[0, 0], result[1, 1] = v[0], -v[0]
    result[0, 1] = v[2] - i * v[1]
    result[1, 0] = v[2] + i * v[1]
    return result


def _dot(v: Sequence[Any], w: Sequence[Any]) -> Any:
    return v[0] * w[0] + v[1] * w[1] + v[2] * w[2]


def _cross(v: Sequence[Any], w: Sequence[Any]) -> Tuple[Any, Any, Any]:
    return (
        v[1] * w[2] - v[2] * w[1],
        v[2] * w[0] - v[0] * w[2],
        v[0] * w[1] - v[1] * w[0],
    )


def align_hermitian(model: ModelSpace, source: KForm, target: KForm,
                    allow_float: bool = True) -> UnitaryElement:
    """
    求结构群元素 U 使 U·source = target

    先用 diag(1, u) 对齐行列式相位（Λ²₋ 部分），再用 SU(2) 元素在
    Λ²₀,₊ 上做轴角对齐。

    Args:
        model: Hermitian 模型
        source: 实 2-形式
        target: 与 source 同轨道的实 2-形式
        allow_float: 精确对齐需要无理数时是否退回浮点

    Returns:
        结构群元素（所在后端可能是浮点）

    Raises:
        DomainError: 不在同一轨道，或需要浮点却不允许
    """
    if not model.is_hermitian:
        raise DomainError("align_hermitian 只适用于 Hermitian 模型")
    backend = model.backend
    source_invariants = orbit_invariants(model, source)
    target_invariants = orbit_invariants(model, target)
    for first, second in zip(source_invariants, target_invariants):
        if backend.exact:
            same = backend.is_zero(first - second)
        else:
            same = backend.magnitude(first - second) <= ALIGN_TOLERANCE
        if not same:
            raise DomainError("not in the same orbit")

    try:
        return _align(model, source, target)
    except _Inexact:
        if not allow_float:
            raise DomainError("exact alignment unavailable: irrational parameters required") from None
        logger.warning("精确对齐需要无理数，改用浮点后端")
        float_model = _float_model(model)
        return _align(float_model, source.to_backend(float_model.backend),
                      target.to_backend(float_model.backend))


def _align(model: ModelSpace, source: KForm, target: KForm) -> UnitaryElement:
    backend = model.backend
    kind = model.kind

    # 1. 行列式相位：Ψ¹∧Ψ² 的系数按 det A 缩放
    w_source, w_target = source[(0, 1)], target[(0, 1)]
    if backend.is_zero(w_source) or backend.is_zero(w_target):
        u = backend.one
    else:
        u = backend.div(w_target, w_source)
        if not backend.exact:
            u = backend.div(u, backend.magnitude(u))
    phase = UnitaryElement.from_block(kind, backend, [[backend.one, backend.zero], [backend.zero, u]])
    shifted = source.pullback(phase.matrix)

    # 2. Λ²₀,₊ 上的旋转
    v_source = _real_coefficients(model, split_two_form(model, shifted).c[:3])
    v_target = _real_coefficients(model, split_two_form(model, target).c[:3])
    rotation = UnitaryElement.identity(kind, backend)
    r2 = _dot(v_source, v_source)
    P = None
    if not backend.exact:
        # 浮点下 v 不按 atol 判零
        P = _float_half_turn(backend, v_source, v_target)
    elif not backend.is_zero(r2):
        P = _exact_half_turn(backend, v_source, v_target, r2)
    if P is not None:
        # 拉回作用下混合块 M ↦ AᵀMĀ，取 A = Pᵀ 得 M ↦ PMP⁻¹
        rotation = UnitaryElement.from_block(kind, backend, P.T.copy())

    element = phase.compose(rotation)
    reached = induced_action(model, element, source)
    difference = reached - target
    if backend.exact:
        aligned = difference.is_zero()
    else:
        aligned = difference.max_abs() <= ALIGN_TOLERANCE
    if not aligned:
        raise InvariantError("Hermitian 对齐见证未能还原目标形式")
    return element


def _exact_half_turn(backend: ScalarBackend, v_source, v_target, r2) -> np.ndarray:
    """P = (I + H(v_t)H(v_s)/r²)/λ，λ² = 2 + 2v_t·v_s/r²"""
    lam2 = backend.coerce(2) + backend.div(_dot(v_target, v_source) * 2, r2)
    if backend.is_zero(lam2):
        return _antipodal(backend, v_source)
    lam = _sqrt(backend, lam2)
    product = linalg.matmul(_pauli(backend, v_target), _pauli(backend, v_source))
    P = linalg.identity(backend, 2) + linalg.scale(product, backend.div(backend.one, r2))
    return linalg.scale(P, backend.div(backend.one, lam))


def _float_half_turn(backend: ScalarBackend, v_source, v_target) -> Optional[np.ndarray]:
    """
    浮点路径的 SU(2) 步：P = (q₀I + i·H(n))/|(q₀, n)|

    ŝ、t̂ 先单位化，n = ŝ×t̂ 投影到 ŝ 的正交补，q₀ = 1 + ŝ·t̂。
    ŝ·t̂ < 0 时 q₀ 改写为 |n|²/(1 − ŝ·t̂)，避免近对径时的相消。
    """
    s = np.array([backend.real_part(a) for a in v_source], dtype=float)
    t = np.array([backend.real_part(a) for a in v_target], dtype=float)
    s_norm, t_norm = np.linalg.norm(s), np.linalg.norm(t)
    if s_norm == 0.0 or t_norm == 0.0:
        return None
    s_hat, t_hat = s / s_norm, t / t_norm
    cos = float(s_hat @ t_hat)
    axis = np.cross(s_hat, t_hat)
    axis = axis - (axis @ s_hat) * s_hat
    n2 = float(axis @ axis)
    if cos < 0 and n2 <= ANTIPODAL_CUTOFF:
        return _antipodal(backend, tuple(backend.coerce(a) for a in s_hat))
    q0 = 1.0 + cos if cos >= 0 else n2 / (1.0 - cos)
    norm = math.hypot(q0, math.sqrt(n2))
    P = (linalg.scale(linalg.identity(backend, 2), backend.coerce(q0))
         + linalg.scale(_pauli(backend, tuple(backend.coerce(a) for a in axis)), backend.imag))
    return linalg.scale(P, backend.coerce(1.0 / norm))


def _antipodal(backend: ScalarBackend, v: Sequence[Any]) -> np.ndarray:
    """v 对径对齐：P = i·H(m)/|m|，m ⊥ v"""
    units = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    candidates = []
    for unit in units:
        m = _cross(v, tuple(backend.coerce(x) for x in unit))
        m2 = _dot(m, m)
        if not backend.is_zero(m2):
            candidates.append((m, m2))
    if not backend.exact:
        candidates.sort(key=lambda item: -backend.magnitude(item[1]))
    for m, m2 in candidates:
        try:
            norm = _sqrt(backend, m2)
        except _Inexact:
            continue
        factor = backend.div(backend.imag, norm)
        return linalg.scale(_pauli(backend, m), factor)
    raise _Inexact()
