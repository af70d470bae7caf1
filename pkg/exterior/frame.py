# 带度量的标架：内积、Hodge 星与音乐同构
"""
标架模块。

度量可以是不定的、复化的；k-形式上的诱导内积使用行列式约定
⟨α¹∧…∧αᵏ, β¹∧…∧βᵏ⟩ = det[⟨αⁱ,βʲ⟩]，不带 1/k! 因子，且是复双线性的。
Hodge 星由 ω₁∧⋆ω₂ = ⟨ω₁,ω₂⟩dν 逐个基单项式确定。
"""
from dataclasses import dataclass
from typing import Any, Sequence, Tuple

import numpy as np

from exterior.forms import DIMENSION, KForm, basis_monomials, complement, sort_sign, wedge
from scalars import ScalarBackend
from scalars import linalg
from utils.errors import DomainError

# dν = Ψ¹∧Ψ³∧Ψ²∧Ψ⁴
VOLUME_ORDER = (0, 2, 1, 3)


@dataclass(frozen=True, eq=False)
class Vector:
    """切向量，分量相对标架 Ψ₁..Ψ₄"""

    components: Tuple[Any, ...]
    backend: ScalarBackend

    @classmethod
    def basis(cls, backend: ScalarBackend, index: int) -> "Vector":
        return cls(tuple(backend.one if i == index else backend.zero for i in range(DIMENSION)), backend)

    def __getitem__(self, index: int) -> Any:
        return self.components[index]

    def __add__(self, other: "Vector") -> "Vector":
        return Vector(tuple(a + b for a, b in zip(self.components, other.components)), self.backend)

    def scale(self, factor: Any) -> "Vector":
        return Vector(tuple(factor * a for a in self.components), self.backend)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return all(self.backend.is_zero(a - b) for a, b in zip(self.components, other.components))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class BasisFrame:
    """
    四维标架及其度量

    Attributes:
        backend: 系数后端
        metric: g_{ij}
        inverse_metric: g^{ij}
        volume: 体积形式 dν
        symbol: 输出时使用的基符号
    """

    backend: ScalarBackend
    metric: np.ndarray
    inverse_metric: np.ndarray
    volume: KForm
    symbol: str = "Ψ"

    @classmethod
    def create(cls, backend: ScalarBackend, metric_rows: Sequence[Sequence[Any]],
               volume_order: Sequence[int] = VOLUME_ORDER, symbol: str = "Ψ") -> "BasisFrame":
        """
        由度量矩阵构造标架

        Args:
            backend: 系数后端
            metric_rows: 对称非退化的 4×4 度量
            volume_order: 体积形式中余向量的顺序
            symbol: 基符号

        Returns:
            标架

        Raises:
            DomainError: 度量不对称
            ScalarError: 度量退化
        """
        metric = linalg.from_rows(backend, metric_rows)
        if metric.shape != (DIMENSION, DIMENSION):
            raise DomainError("度量必须是 4×4 矩阵")
        if not linalg.equal(backend, metric, metric.T):
            raise DomainError("度量必须对称")
        inverse = linalg.inverse(backend, metric)

        volume = KForm.monomial(backend, volume_order[0])
        for index in volume_order[1:]:
            volume = wedge(volume, KForm.monomial(backend, index))
        return cls(backend, metric, inverse, volume, symbol)

    def to_backend(self, backend: ScalarBackend) -> "BasisFrame":
        return BasisFrame(
            backend,
            linalg.convert(self.metric, backend),
            linalg.convert(self.inverse_metric, backend),
            self.volume.to_backend(backend),
            self.symbol,
        )

    def inner(self, v: Vector, w: Vector) -> Any:
        """g(v, w)"""
        total = self.backend.zero
        for i in range(DIMENSION):
            for j in range(DIMENSION):
                total = total + self.metric[i, j] * v[i] * w[j]
        return total


def form_inner(frame: BasisFrame, a: KForm, b: KForm) -> Any:
    """
    k-形式上的诱导内积（复双线性）

    Raises:
        DomainError: 次数不一致
    """
    if a.degree != b.degree:
        raise DomainError(f"次数不一致: {a.degree} 与 {b.degree}")
    backend = frame.backend
    total = backend.zero
    for left, x in a.items():
        for right, y in b.items():
            total = total + x * y * linalg.minor_det(backend, frame.inverse_metric, left, right)
    return total


def hodge_star(frame: BasisFrame, a: KForm) -> KForm:
    """
    Hodge 星算子，满足 ω₁∧⋆a = ⟨ω₁, a⟩dν 对一切同次 ω₁ 成立

    Args:
        frame: 标架
        a: k-形式

    Returns:
        (4−k)-形式
    """
    backend = frame.backend
    top = frame.volume.coeffs[0]
    result = {}
    for monomial in basis_monomials(a.degree):
        pairing = backend.zero
        for source, value in a.items():
            pairing = pairing + value * linalg.minor_det(backend, frame.inverse_metric, monomial, source)
        if backend.is_zero(pairing):
            continue
        rest = complement(monomial)
        _, sign = sort_sign(monomial + rest)
        coefficient = pairing * top
        result[rest] = coefficient if sign > 0 else -coefficient
    return KForm.from_dict(backend, DIMENSION - a.degree, result)


def sharp(frame: BasisFrame, omega: KForm) -> Vector:
    """余向量的度量对偶：g(sharp(ω), y) = ω(y)"""
    if omega.degree != 1:
        raise DomainError("sharp 只作用于 1-形式")
    backend = frame.backend
    components = []
    for i in range(DIMENSION):
        total = backend.zero
        for j in range(DIMENSION):
            total = total + frame.inverse_metric[i, j] * omega.coeffs[j]
        components.append(total)
    return Vector(tuple(components), backend)


def flat(frame: BasisFrame, v: Vector) -> KForm:
    """向量的度量对偶"""
    backend = frame.backend
    components = []
    for i in range(DIMENSION):
        total = backend.zero
        for j in range(DIMENSION):
            total = total + frame.metric[i, j] * v[j]
        components.append(total)
    return KForm(1, tuple(components), backend)
