# Hermitian 与 para-Hermitian 模型空间
"""
模型空间模块。

两个模型共用同一个标架 Ψ：度量 ⟨Ψ₁,Ψ₃⟩ = ⟨Ψ₂,Ψ₄⟩ = 1，其余为 0，
体积形式 dν = Ψ¹∧Ψ³∧Ψ²∧Ψ⁴。

- Hermitian（符号 (0,4)）：Ψ = (Z₁, Z₂, Z̄₁, Z̄₂)，J₋ = diag(i, i, −i, −i)，
  Ω = −i(Ψ¹∧Ψ³ + Ψ²∧Ψ⁴)
- para-Hermitian（符号 (2,2)）：Ψ = (e₁, e₂, e₃, e₄)，J₊ = diag(1, 1, −1, −1)，
  Ω = −Ψ¹∧Ψ³ − Ψ²∧Ψ⁴

J 作用在形式上是拉回 ξ ↦ ξ(J·, …, J·)。记 sign = +1 (para) / −1 (Hermitian)，
则 J² = sign·Id，J*g = −sign·g，Λ²₀ 部分满足 Jθ = −sign·θ，Λ²± 部分满足 Jθ = sign·θ。
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, NamedTuple, Sequence, Tuple

import numpy as np

from exterior import DIMENSION, BasisFrame, KForm, basis_monomials, form_inner
from scalars import EXACT, ScalarBackend
from scalars import linalg
from utils.errors import DomainError, InvariantError, RealityViolation

logger = logging.getLogger(__name__)


class ModelKind(str, Enum):
    """模型类型"""
    HERMITIAN = "hermitian"
    PARA = "para"


HYPERBOLIC_METRIC = (
    (0, 0, 1, 0),
    (0, 0, 0, 1),
    (1, 0, 0, 0),
    (0, 1, 0, 0),
)

# θ 基，键为从 0 开始的指标对，值为 (实部, 虚部)
_PARA_THETAS = (
    {(0, 2): (1, 0), (1, 3): (-1, 0)},
    {(0, 3): (1, 0), (1, 2): (1, 0)},
    {(0, 3): (1, 0), (1, 2): (-1, 0)},
    {(0, 1): (1, 0), (2, 3): (1, 0)},
    {(0, 1): (1, 0), (2, 3): (-1, 0)},
)
_PARA_OMEGA = {(0, 2): (-1, 0), (1, 3): (-1, 0)}
_PARA_NORMS = (-2, -2, 2, 2, -2)
_PARA_OMEGA_NORM = -2

_HERMITIAN_THETAS = (
    {(0, 2): (0, 1), (1, 3): (0, -1)},
    {(0, 3): (1, 0), (1, 2): (-1, 0)},
    {(0, 3): (0, 1), (1, 2): (0, 1)},
    {(0, 1): (1, 0), (2, 3): (1, 0)},
    {(0, 1): (0, 1), (2, 3): (0, -1)},
)
_HERMITIAN_OMEGA = {(0, 2): (0, -1), (1, 3): (0, -1)}
_HERMITIAN_NORMS = (2, 2, 2, 2, 2)
_HERMITIAN_OMEGA_NORM = 2


@dataclass(frozen=True, eq=False)
class ModelSpace:
    """
    模型空间 (V, ⟨·,·⟩, J)

    Attributes:
        kind: 模型类型
        backend: 系数后端
        frame: Ψ 标架
        J: J 在向量上的矩阵，JΨ_j = Σ_k J[k, j] Ψ_k
        omega: Kähler 形式 Ω(x, y) = g(x, Jy)
        thetas: θ₁..θ₅
        theta_norms: ⟨θᵢ, θᵢ⟩
        omega_norm: ⟨Ω, Ω⟩
        sign: J² = sign·Id
        conj_perm: 共轭在指标上的置换（Hermitian 交换 Ψ¹↔Ψ³、Ψ²↔Ψ⁴）
        real_frame: 实基 e 的标架（para 模型即 Ψ 标架）
        to_real: 过渡矩阵，Ψ_j = Σ_a to_real[a, j] e_a
        real_J: J 在实基上的矩阵
    """

    kind: ModelKind
    backend: ScalarBackend
    frame: BasisFrame
    J: np.ndarray
    omega: KForm
    thetas: Tuple[KForm, ...]
    theta_norms: Tuple[Any, ...]
    omega_norm: Any
    sign: int
    conj_perm: Tuple[int, ...]
    real_frame: BasisFrame
    to_real: np.ndarray
    real_J: np.ndarray

    @property
    def is_hermitian(self) -> bool:
        return self.kind is ModelKind.HERMITIAN

    def with_backend(self, backend: ScalarBackend) -> "ModelSpace":
        return build_model(self.kind, backend)

    @property
    def conj_matrix(self) -> np.ndarray:
        matrix = linalg.zeros(self.backend, DIMENSION, DIMENSION)
        for a, b in enumerate(self.conj_perm):
            matrix[a, b] = self.backend.one
        return matrix

    def real_covector(self, index: int) -> KForm:
        """实基余向量 e^a 在 Ψ 坐标下的表示"""
        return KForm(1, tuple(self.to_real[index, j] for j in range(DIMENSION)), self.backend)


def _scalar(backend: ScalarBackend, value: Tuple[int, int]) -> Any:
    re, im = value
    return backend.coerce(re) + backend.coerce(im) * backend.imag


def _form(backend: ScalarBackend, table) -> KForm:
    return KForm.from_dict(backend, 2, {key: _scalar(backend, value) for key, value in table.items()})


def build_model(kind, backend: ScalarBackend = EXACT) -> ModelSpace:
    """
    构造模型空间，并在构造时校验 J、Ω 与 θ 内积表

    Args:
        kind: ModelKind 或 "hermitian" / "para"
        backend: 系数后端

    Returns:
        模型空间

    Raises:
        InvariantError: 内置表格与度量、J 不一致
    """
    return _build_model(ModelKind(kind), backend)


@lru_cache(maxsize=None)
def _build_model(kind: ModelKind, backend: ScalarBackend) -> ModelSpace:
    i = backend.imag
    frame = BasisFrame.create(backend, HYPERBOLIC_METRIC)

    if kind is ModelKind.PARA:
        sign = 1
        J = linalg.from_rows(backend, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
        thetas, omega = _PARA_THETAS, _PARA_OMEGA
        norms, omega_norm = _PARA_NORMS, _PARA_OMEGA_NORM
        conj_perm = (0, 1, 2, 3)
        real_frame = frame
        to_real = linalg.identity(backend)
        real_J = J
    else:
        sign = -1
        J = linalg.zeros(backend, DIMENSION, DIMENSION)
        J[0, 0], J[1, 1], J[2, 2], J[3, 3] = i, i, -i, -i
        thetas, omega = _HERMITIAN_THETAS, _HERMITIAN_OMEGA
        norms, omega_norm = _HERMITIAN_NORMS, _HERMITIAN_OMEGA_NORM
        conj_perm = (2, 3, 0, 1)
        real_frame = BasisFrame.create(
            backend,
            [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]],
            volume_order=(0, 1, 2, 3),
            symbol="e",
        )
        half = backend.half
        # Z₁ = ½(e₁ − i e₂), Z₂ = ½(e₃ − i e₄)
        to_real = linalg.zeros(backend, DIMENSION, DIMENSION)
        to_real[0, 0], to_real[1, 0] = half, -half * i
        to_real[2, 1], to_real[3, 1] = half, -half * i
        to_real[0, 2], to_real[1, 2] = half, half * i
        to_real[2, 3], to_real[3, 3] = half, half * i
        real_J = linalg.from_rows(backend, [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])

    model = ModelSpace(
        kind=kind,
        backend=backend,
        frame=frame,
        J=J,
        omega=_form(backend, omega),
        thetas=tuple(_form(backend, table) for table in thetas),
        theta_norms=tuple(backend.coerce(n) for n in norms),
        omega_norm=backend.coerce(omega_norm),
        sign=sign,
        conj_perm=conj_perm,
        real_frame=real_frame,
        to_real=to_real,
        real_J=real_J,
    )
    _certify(model)
    logger.debug("已构造模型空间 %s (%s)", kind.value, backend.name)
    return model


def _certify(model: ModelSpace):
    backend = model.backend
    g, J = model.frame.metric, model.J
    sign = backend.coerce(model.sign)

    if not linalg.equal(backend, linalg.matmul(J, J), linalg.scale(linalg.identity(backend), sign)):
        raise InvariantError(f"{model.kind.value}: J² ≠ {model.sign}·Id")
    if not linalg.equal(backend, linalg.matmul(linalg.matmul(J.T, g), J), linalg.scale(g, -sign)):
        raise InvariantError(f"{model.kind.value}: J*g ≠ {-model.sign}·g")

    omega = KForm.from_dict(backend, 2, {
        (a, b): sum((g[a, l] * J[l, b] for l in range(DIMENSION)), backend.zero)
        for a, b in basis_monomials(2)
    })
    if omega != model.omega:
        raise InvariantError(f"{model.kind.value}: Ω 与 g(·, J·) 不一致")

    basis = model.thetas + (model.omega,)
    norms = model.theta_norms + (model.omega_norm,)
    for p, first in enumerate(basis):
        for q, second in enumerate(basis):
            value = form_inner(model.frame, first, second)
            expected = norms[p] if p == q else backend.zero
            if not backend.equal(value, expected):
                raise InvariantError(f"{model.kind.value}: θ 内积表第 ({p + 1}, {q + 1}) 项不符")

    for index, theta in enumerate(model.thetas):
        eigen = -model.sign if index < 3 else model.sign
        if act_on_form(model, theta) != theta.scale(eigen):
            raise InvariantError(f"{model.kind.value}: θ{index + 1} 不是 J 的 {eigen} 特征形式")

    P = model.to_real
    if not linalg.equal(backend, linalg.matmul(linalg.matmul(P.T, model.real_frame.metric), P), g):
        raise InvariantError(f"{model.kind.value}: 实基过渡矩阵与度量不一致")
    if not linalg.equal(backend, linalg.matmul(model.real_J, P), linalg.matmul(P, J)):
        raise InvariantError(f"{model.kind.value}: 实基过渡矩阵与 J 不一致")


def act_on_form(model: ModelSpace, xi: KForm) -> KForm:
    """J 在形式上的作用 ξ ↦ ξ(J·, …, J·)"""
    return xi.pullback(model.J)


def act_on_sym(model: ModelSpace, s: np.ndarray) -> np.ndarray:
    """J 在对称 2-张量上的作用 s ↦ s(J·, J·)"""
    return linalg.matmul(linalg.matmul(model.J.T, s), model.J)


def conjugate_form(model: ModelSpace, xi: KForm) -> KForm:
    """复共轭：共轭系数并按 conj_perm 置换余向量"""
    return xi.map(model.backend.conjugate).pullback(model.conj_matrix)


def is_real_form(model: ModelSpace, xi: KForm) -> bool:
    return conjugate_form(model, xi) == xi


@dataclass(frozen=True, eq=False)
class TwoFormSplit:
    """
    2-形式在 θ 基与 Ω 上的坐标

    Attributes:
        c: θ₁..θ₅ 上的系数
        omega_coeff: Ω（χ 直线）上的系数
    """

    c: Tuple[Any, ...]
    omega_coeff: Any

    def zero_part(self, model: ModelSpace) -> KForm:
        """Λ²₀ 部分（θ₁, θ₂, θ₃）"""
        return _combine(model, self.c[:3], model.thetas[:3])

    def pm_part(self, model: ModelSpace) -> KForm:
        """Λ²± 部分（θ₄, θ₅）"""
        return _combine(model, self.c[3:], model.thetas[3:])

    def chi_part(self, model: ModelSpace) -> KForm:
        return model.omega.scale(self.omega_coeff)

    def assemble(self, model: ModelSpace) -> KForm:
        return self.zero_part(model) + self.pm_part(model) + self.chi_part(model)


def _combine(model: ModelSpace, coefficients: Sequence[Any], forms: Sequence[KForm]) -> KForm:
    total = KForm.zero(model.backend, 2)
    for value, form in zip(coefficients, forms):
        total = total + form.scale(value)
    return total


def split_two_form(model: ModelSpace, xi: KForm, check_reality: bool = True) -> TwoFormSplit:
    """
    把 2-形式分解为 χ ⊕ Λ²₀ ⊕ Λ²± 三部分

    Args:
        model: 模型空间
        xi: 2-形式
        check_reality: Hermitian 模型下是否要求 ξ 为实形式

    Returns:
        TwoFormSplit

    Raises:
        RealityViolation: Hermitian 模型中 ξ 不是实形式
    """
    if xi.degree != 2:
        raise DomainError("split_two_form 只接受 2-形式")
    if check_reality and model.is_hermitian and not is_real_form(model, xi):
        raise RealityViolation("2-形式不是实形式")

    backend = model.backend
    c = tuple(
        backend.div(form_inner(model.frame, xi, theta), norm)
        for theta, norm in zip(model.thetas, model.theta_norms)
    )
    omega_coeff = backend.div(form_inner(model.frame, xi, model.omega), model.omega_norm)
    split = TwoFormSplit(c, omega_coeff)
    if split.assemble(model) != xi:
        raise InvariantError("θ 分解无法还原输入形式")
    return split


class OrbitInvariants(NamedTuple):
    """x = |ξ₀|²，y = |ξ±|²"""
    x: Any
    y: Any


def orbit_invariants(model: ModelSpace, xi: KForm) -> OrbitInvariants:
    """
    结构群轨道的不变量

    Raises:
        DomainError: para 模型中这组量不是完全不变量
    """
    if not model.is_hermitian:
        raise DomainError("orbit invariants are not a complete invariant in para signature")
    split = split_two_form(model, xi)
    zero_part, pm_part = split.zero_part(model), split.pm_part(model)
    return OrbitInvariants(
        form_inner(model.frame, zero_part, zero_part),
        form_inner(model.frame, pm_part, pm_part),
    )


def projection_ranks(model: ModelSpace) -> Tuple[int, int, int]:
    """
    Λ² 上三个投影 (χ, Λ²₀, Λ²±) 的秩

    Returns:
        三个投影矩阵的秩
    """
    backend = model.backend
    monomials = basis_monomials(2)
    matrices = [linalg.zeros(backend, len(monomials), len(monomials)) for _ in range(3)]
    for col, monomial in enumerate(monomials):
        split = split_two_form(model, KForm.monomial(backend, *monomial), check_reality=False)
        parts = (split.chi_part(model), split.zero_part(model), split.pm_part(model))
        for matrix, part in zip(matrices, parts):
            for row, value in enumerate(part.coeffs):
                matrix[row, col] = value
    return tuple(linalg.rank(backend, matrix) for matrix in matrices)


@dataclass(frozen=True, eq=False)
class SymTwoSplit:
    """
    对称 2-张量的分解 s = trace_part·g + s0_part + spm_part

    Attributes:
        trace_part: g 方向上的系数
        s0_part: 迹零且与 g 同 J-特征值的部分
        spm_part: 与 g 反 J-特征值的部分
    """

    trace_part: Any
    s0_part: np.ndarray
    spm_part: np.ndarray

    def assemble(self, model: ModelSpace) -> np.ndarray:
        return linalg.scale(model.frame.metric, self.trace_part) + self.s0_part + self.spm_part


def metric_trace(model: ModelSpace, s: np.ndarray) -> Any:
    """g^{ij} s_{ij}"""
    ginv = model.frame.inverse_metric
    total = model.backend.zero
    for a in range(DIMENSION):
        for b in range(DIMENSION):
            total = total + ginv[a, b] * s[a, b]
    return total


def split_sym_two_tensor(model: ModelSpace, s) -> SymTwoSplit:
    """
    把对称 2-张量分解为迹部分、S²₀ 部分与 S²± 部分

    Args:
        model: 模型空间
        s: 4×4 对称矩阵（对象数组或嵌套序列）

    Returns:
        SymTwoSplit

    Raises:
        DomainError: s 不对称
    """
    backend = model.backend
    if not isinstance(s, np.ndarray):
        s = linalg.from_rows(backend, s)
    if not linalg.equal(backend, s, s.T):
        raise DomainError("张量不对称")

    # g 在 J 作用下的特征值
    eta = backend.coerce(-model.sign)
    half = backend.half
    js = act_on_sym(model, s)
    same = linalg.scale(s + linalg.scale(js, eta), half)
    spm = linalg.scale(s - linalg.scale(js, eta), half)
    trace = backend.div(metric_trace(model, s), DIMENSION)
    s0 = same - linalg.scale(model.frame.metric, trace)
    return SymTwoSplit(trace, s0, spm)


def integrability_predicates(model: ModelSpace, algebra) -> bool:
    """
    复（para 复）结构可积的 span 判据

    para: [e₁,e₂] ∈ Span{e₁,e₂} 且 [e₃,e₄] ∈ Span{e₃,e₄}；
    Hermitian: [Z₁,Z₂] ∈ Span{Z₁,Z₂} 且 [Z̄₁,Z̄₂] ∈ Span{Z̄₁,Z̄₂}。
    两种情况在 Ψ 标架下是同一组条件。
    """
    c = algebra.constants
    backend = algebra.backend
    entries = (c[0, 1, 2], c[0, 1, 3], c[2, 3, 0], c[2, 3, 1])
    return all(backend.is_zero(value) for value in entries)
