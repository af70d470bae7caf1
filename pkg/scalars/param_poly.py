# 参数多项式环，带结构化共轭
"""
参数多项式模块。

ParamRing 在 sympy 的多项式环 (QQ_I, grlex) 上声明一组未定元，并把它们
配成共轭对 (x, x̄) 或标记为实的。共轭是结构性的：交换配对的未定元并
共轭系数，不需要代入数值。
"""
import logging
from functools import cached_property
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring

from scalars.backends import EXACT, ScalarBackend, SymbolicBackend
from utils.errors import RealityViolation, ScalarError

logger = logging.getLogger(__name__)


class ParamRing:
    """
    带共轭结构的参数多项式环

    Args:
        names: 未定元名称，顺序即分次字典序中的变量顺序
        conjugate_pairs: 共轭配对 (x, x̄)；未出现在任何配对中的未定元视为实的
    """

    def __init__(self, names: Sequence[str], conjugate_pairs: Iterable[Tuple[str, str]] = ()):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"未定元名称重复: {self.names}")
        self.ring, *gens = ring(list(self.names), QQ_I, grlex)
        self.gens = tuple(gens)

        self._partner = list(range(len(self.names)))
        for first, second in conjugate_pairs:
            i, j = self.index(first), self.index(second)
            if i == j or self._partner[i] != i or self._partner[j] != j:
                raise ValueError(f"无效的共轭配对: ({first}, {second})")
            self._partner[i], self._partner[j] = j, i

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ScalarError(f"unknown indeterminate: {name}") from None

    def symbol(self, name: str) -> PolyElement:
        """返回名为 name 的生成元"""
        return self.gens[self.index(name)]

    __getitem__ = symbol

    def partner(self, name: str) -> str:
        return self.names[self._partner[self.index(name)]]

    def is_real_symbol(self, name: str) -> bool:
        return self.partner(name) == name

    @cached_property
    def backend(self) -> SymbolicBackend:
        return SymbolicBackend(self)

    def conjugate(self, p: PolyElement) -> PolyElement:
        """交换配对的未定元并共轭系数"""
        terms = {}
        for monom, coeff in p.items():
            swapped = tuple(monom[self._partner[k]] for k in range(len(monom)))
            terms[swapped] = GaussianRational(coeff.x, -coeff.y)
        return self.ring.from_dict(terms)

    def _complete(self, assignment: Mapping[str, Any], backend: ScalarBackend) -> Dict[int, Any]:
        values: Dict[int, Any] = {}
        for name, raw in assignment.items():
            values[self.index(name)] = backend.coerce(raw)

        for idx, value in list(values.items()):
            partner = self._partner[idx]
            expected = backend.conjugate(value)
            if partner == idx:
                if not backend.equal(value, expected):
                    raise RealityViolation(f"{self.names[idx]} 被标记为实未定元")
            elif partner in values:
                if not backend.equal(values[partner], expected):
                    raise RealityViolation(
                        f"{self.names[partner]} 必须是 {self.names[idx]} 的共轭"
                    )
            else:
                values[partner] = expected
        return values

    def evaluate(self, p: PolyElement, assignment: Mapping[str, Any],
                 backend: Optional[ScalarBackend] = None) -> Any:
        """
        把未定元代入数值

        Args:
            p: 待求值的多项式
            assignment: 未定元名称到数值的映射；共轭配对中缺失的一方由共轭补全
            backend: 结果所在的数值后端，默认精确后端

        Returns:
            backend 中的标量

        Raises:
            ScalarError: 多项式中存在未赋值的未定元
            RealityViolation: 赋值违反共轭配对或实性标记
        """
        backend = backend or EXACT
        values = self._complete(assignment, backend)

        total = backend.zero
        for monom, coeff in p.items():
            term = backend.coerce(coeff)
            for idx, exponent in enumerate(monom):
                if not exponent:
                    continue
                if idx not in values:
                    raise ScalarError(f"unbound indeterminate: {self.names[idx]}")
                for _ in range(exponent):
                    term = term * values[idx]
            total = total + term
        return total

    def __repr__(self) -> str:
        return f"ParamRing({', '.join(self.names)})"
