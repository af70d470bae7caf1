# 外代数中的 k-形式
"""
四维空间上的稠密外代数。

k-形式按字典序的基单项式 Ψ^{i1}∧…∧Ψ^{ik}（i1<…<ik，内部从 0 开始编号）
存储系数元组；反对称性隐含在存储方式中。
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Callable, Dict, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy.combinatorics import Permutation

from scalars import ScalarBackend
from scalars.linalg import minor_det
from utils.errors import DomainError

DIMENSION = 4

Indices = Tuple[int, ...]


@lru_cache(maxsize=None)
def basis_monomials(degree: int) -> Tuple[Indices, ...]:
    """degree 次基单项式，字典序"""
    if not 0 <= degree <= DIMENSION:
        raise DomainError("degree exceeds dimension")
    return tuple(combinations(range(DIMENSION), degree))


@lru_cache(maxsize=None)
def _positions(degree: int) -> Dict[Indices, int]:
    return {monomial: pos for pos, monomial in enumerate(basis_monomials(degree))}


@lru_cache(maxsize=None)
def sort_sign(indices: Indices) -> Optional[Tuple[Indices, int]]:
    """
    把指标排成升序

    Returns:
        (升序指标, 置换符号)；有重复指标时返回 None
    """
    if len(set(indices)) != len(indices):
        return None
    order = sorted(range(len(indices)), key=indices.__getitem__)
    sign = -1 if len(order) > 1 and Permutation(order).parity() else 1
    return tuple(indices[i] for i in order), sign


def complement(indices: Indices) -> Indices:
    return tuple(i for i in range(DIMENSION) if i not in indices)


@dataclass(frozen=True, eq=False)
class KForm:
    """
    k-形式

    Attributes:
        degree: 次数 k
        coeffs: 各基单项式上的系数，顺序同 basis_monomials(degree)
        backend: 系数所在的数值后端
    """

    degree: int
    coeffs: Tuple[Any, ...]
    backend: ScalarBackend

    def __post_init__(self):
        if len(self.coeffs) != len(basis_monomials(self.degree)):
            raise ValueError(f"{self.degree}-形式需要 {len(basis_monomials(self.degree))} 个系数")

    @classmethod
    def zero(cls, backend: ScalarBackend, degree: int) -> "KForm":
        return cls(degree, (backend.zero,) * len(basis_monomials(degree)), backend)

    @classmethod
    def from_dict(cls, backend: ScalarBackend, degree: int,
                  mapping: Mapping[Indices, Any]) -> "KForm":
        """
        由 {指标元组: 系数} 构造；指标不必升序，按置换符号换算

        Args:
            backend: 数值后端
            degree: 次数
            mapping: 指标（从 0 开始）到系数的映射

        Returns:
            对应的 k-形式
        """
        coeffs = [backend.zero] * len(basis_monomials(degree))
        positions = _positions(degree)
        for indices, value in mapping.items():
            indices = tuple(indices)
            if len(indices) != degree:
                raise ValueError(f"单项式 {indices} 的次数不是 {degree}")
            if any(not 0 <= i < DIMENSION for i in indices):
                raise ValueError(f"单项式 {indices} 的指标越界")
            sorted_sign = sort_sign(indices)
            if sorted_sign is None:
                continue
            monomial, sign = sorted_sign
            value = backend.coerce(value)
            pos = positions[monomial]
            coeffs[pos] = coeffs[pos] + value if sign > 0 else coeffs[pos] - value
        return cls(degree, tuple(coeffs), backend)

    @classmethod
    def monomial(cls, backend: ScalarBackend, *indices: int, coeff: Any = None) -> "KForm":
        value = backend.one if coeff is None else coeff
        return cls.from_dict(backend, len(indices), {tuple(indices): value})

    @classmethod
    def covector(cls, backend: ScalarBackend, components: Sequence[Any]) -> "KForm":
        return cls(1, tuple(backend.coerce(c) for c in components), backend)

    def __getitem__(self, indices) -> Any:
        if isinstance(indices, int):
            indices = (indices,)
        sorted_sign = sort_sign(tuple(indices))
        if sorted_sign is None:
            return self.backend.zero
        monomial, sign = sorted_sign
        value = self.coeffs[_positions(self.degree)[monomial]]
        return value if sign > 0 else -value

    def items(self) -> Iterator[Tuple[Indices, Any]]:
        """非零系数的 (指标, 系数) 迭代"""
        for monomial, value in zip(basis_monomials(self.degree), self.coeffs):
            if not self.backend.is_zero(value):
                yield monomial, value

    def as_dict(self) -> Dict[Indices, Any]:
        return dict(self.items())

    def _check_compatible(self, other: "KForm"):
        if self.degree != other.degree:
            raise DomainError(f"次数不一致: {self.degree} 与 {other.degree}")

    def __add__(self, other: "KForm") -> "KForm":
        self._check_compatible(other)
        return KForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.backend)

    def __sub__(self, other: "KForm") -> "KForm":
        self._check_compatible(other)
        return KForm(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.backend)

    def __neg__(self) -> "KForm":
        return KForm(self.degree, tuple(-a for a in self.coeffs), self.backend)

    def scale(self, factor: Any) -> "KForm":
        factor = self.backend.coerce(factor)
        return KForm(self.degree, tuple(factor * a for a in self.coeffs), self.backend)

    def map(self, fn: Callable[[Any], Any]) -> "KForm":
        return KForm(self.degree, tuple(fn(a) for a in self.coeffs), self.backend)

    def to_backend(self, backend: ScalarBackend) -> "KForm":
        return KForm(self.degree, tuple(backend.coerce(a) for a in self.coeffs), backend)

    def is_zero(self) -> bool:
        return all(self.backend.is_zero(a) for a in self.coeffs)

    def max_abs(self) -> float:
        return max((self.backend.magnitude(a) for a in self.coeffs), default=0.0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KForm):
            return NotImplemented
        if self.degree != other.degree:
            return False
        return all(self.backend.is_zero(a - b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def wedge(self, other: "KForm") -> "KForm":
        return wedge(self, other)

    def pullback(self, matrix: np.ndarray) -> "KForm":
        """
        沿线性映射 T 拉回：(T*ξ)(x1,…,xk) = ξ(Tx1,…,Txk)

        Args:
            matrix: 4×4 矩阵，TΨ_j = Σ_a T[a, j] Ψ_a

        Returns:
            拉回后的同次形式
        """
        coeffs = []
        for target in basis_monomials(self.degree):
            total = self.backend.zero
            for source, value in self.items():
                total = total + value * minor_det(self.backend, matrix, source, target)
            coeffs.append(total)
        return KForm(self.degree, tuple(coeffs), self.backend)

    def __repr__(self) -> str:
        terms = ", ".join(
            f"{''.join(str(i + 1) for i in monomial)}: {self.backend.describe(value)}"
            for monomial, value in self.items()
        )
        return f"KForm(degree={self.degree}, {{{terms}}})"


def wedge(a: KForm, b: KForm) -> KForm:
    """
    外积 a∧b

    Raises:
        DomainError: 次数之和超过 4
    """
    degree = a.degree + b.degree
    if degree > DIMENSION:
        raise DomainError("degree exceeds dimension")
    backend = a.backend
    coeffs = [backend.zero] * len(basis_monomials(degree))
    positions = _positions(degree)
    for left, x in a.items():
        for right, y in b.items():
            sorted_sign = sort_sign(left + right)
            if sorted_sign is None:
                continue
            monomial, sign = sorted_sign
            pos = positions[monomial]
            coeffs[pos] = coeffs[pos] + x * y if sign > 0 else coeffs[pos] - x * y
    return KForm(degree, tuple(coeffs), backend)
