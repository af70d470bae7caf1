# 标量后端，提供张量计算所使用的系数环
"""
标量后端模块。

所有张量都以 numpy 对象数组存放系数，系数的运算只依赖 Python 运算符
(+, -, *, 一元负号)。除此之外的操作（除法、共轭、判零、类型转换）由
后端对象提供：

- ExactBackend: sympy 的高斯有理数 QQ_I
- FloatBackend: 双精度复数
- SymbolicBackend: 带共轭结构的参数多项式（见 param_poly 模块）
"""
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
import sympy
from sympy import integer_nthroot
from sympy.polys.domains import QQ
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.rings import PolyElement

from utils.errors import ScalarError

logger = logging.getLogger(__name__)

Scalar = Any


def to_rational(value: Any):
    """
    把整数、字符串("p/q"或十进制)、浮点数或 sympy 有理数转换为 QQ 元素

    Args:
        value: 待转换的值

    Returns:
        QQ 域中的有理数

    Raises:
        ValueError: 无法解析为有理数
    """
    if isinstance(value, bool):
        raise ValueError(f"无法将布尔值解析为有理数: {value}")
    if QQ.of_type(value):
        return value
    if isinstance(value, str):
        text = value.strip()
        try:
            parsed = sympy.Rational(text)
        except (TypeError, ValueError, SyntaxError) as exc:
            raise ValueError(f"无法解析有理数: {value!r}") from exc
        return QQ.from_sympy(parsed)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ValueError(f"无法解析有理数: {value!r}")
        return QQ.from_sympy(sympy.Rational(repr(float(value))))
    if isinstance(value, np.integer):
        value = int(value)
    return QQ.convert(value)


def format_rational(q) -> str:
    """把有理数格式化为 "p/q"（整数省略分母）"""
    numerator, denominator = int(q.numerator), int(q.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def exact_sqrt(q) -> Optional[Any]:
    """
    有理数的精确平方根

    Args:
        q: 非负有理数

    Returns:
        满足 r*r == q 的非负有理数 r；q 不是有理数的平方时返回 None

    Raises:
        ScalarError: q 为负数
    """
    q = to_rational(q)
    if q < 0:
        raise ScalarError("negative radicand")
    root_num, exact_num = integer_nthroot(int(q.numerator), 2)
    root_den, exact_den = integer_nthroot(int(q.denominator), 2)
    if exact_num and exact_den:
        return QQ(int(root_num), int(root_den))
    return None


class ScalarBackend(ABC):
    """系数环后端的抽象接口"""

    name: str = ""
    exact: bool = True

    @property
    @abstractmethod
    def zero(self) -> Scalar:
        """加法单位元"""

    @property
    @abstractmethod
    def one(self) -> Scalar:
        """乘法单位元"""

    @property
    @abstractmethod
    def imag(self) -> Scalar:
        """虚数单位 √−1"""

    @abstractmethod
    def coerce(self, value: Any) -> Scalar:
        """把外部数值转换为本后端的标量"""

    @abstractmethod
    def conjugate(self, a: Scalar) -> Scalar:
        """复共轭"""

    @abstractmethod
    def is_zero(self, a: Scalar) -> bool:
        """判零（浮点后端带容差）"""

    @abstractmethod
    def div(self, a: Scalar, b: Scalar) -> Scalar:
        """除法，b 必须可逆"""

    @abstractmethod
    def magnitude(self, a: Scalar) -> float:
        """模长的浮点近似，用于残差报告"""

    @abstractmethod
    def to_complex(self, a: Scalar) -> complex:
        """转换为 Python 复数"""

    @abstractmethod
    def real_part(self, a: Scalar) -> Any:
        """实部（精确后端返回 QQ 元素，浮点后端返回 float）"""

    @abstractmethod
    def imag_part(self, a: Scalar) -> Any:
        """虚部，类型同 real_part"""

    @abstractmethod
    def describe(self, a: Scalar) -> str:
        """人类可读的字符串"""

    def rational(self, numerator: int, denominator: int = 1) -> Scalar:
        return self.div(self.coerce(numerator), self.coerce(denominator))

    @property
    def half(self) -> Scalar:
        return self.rational(1, 2)

    def equal(self, a: Scalar, b: Scalar) -> bool:
        return self.is_zero(a - b)

    def is_real(self, a: Scalar) -> bool:
        return self.is_zero(a - self.conjugate(a))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class ExactBackend(ScalarBackend):
    """高斯有理数后端，所有运算都是精确的"""

    name = "exact"
    exact = True

    _ZERO = GaussianRational(0, 0)
    _ONE = GaussianRational(1, 0)
    _IMAG = GaussianRational(0, 1)

    @property
    def zero(self):
        return self._ZERO

    @property
    def one(self):
        return self._ONE

    @property
    def imag(self):
        return self._IMAG

    def coerce(self, value: Any) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, PolyElement):
            if not value.is_ground:
                raise ScalarError("unbound indeterminate")
            return value.get(value.ring.zero_monom, self._ZERO)
        if isinstance(value, (complex, np.complexfloating)):
            return GaussianRational(to_rational(value.real), to_rational(value.imag))
        return GaussianRational(to_rational(value), QQ.zero)

    def conjugate(self, a: GaussianRational) -> GaussianRational:
        return GaussianRational(a.x, -a.y)

    def is_zero(self, a: GaussianRational) -> bool:
        return not a

    def div(self, a, b):
        a, b = self.coerce(a), self.coerce(b)
        if not b:
            raise ScalarError("non-invertible scalar")
        return a / b

    def magnitude(self, a) -> float:
        return math.hypot(float(a.x), float(a.y))

    def to_complex(self, a) -> complex:
        return complex(float(a.x), float(a.y))

    def real_part(self, a):
        return a.x

    def imag_part(self, a):
        return a.y

    def describe(self, a) -> str:
        if not a.y:
            return format_rational(a.x)
        if not a.x:
            return f"{format_rational(a.y)}i"
        sign = "-" if a.y < 0 else "+"
        return f"{format_rational(a.x)}{sign}{format_rational(abs(a.y))}i"


@dataclass(frozen=True)
class FloatBackend(ScalarBackend):
    """
    双精度复数后端

    Attributes:
        atol: 判零使用的绝对容差
    """

    atol: float = 1e-10

    name = "float"
    exact = False

    @property
    def zero(self) -> complex:
        return 0j

    @property
    def one(self) -> complex:
        return 1 + 0j

    @property
    def imag(self) -> complex:
        return 1j

    def coerce(self, value: Any) -> complex:
        if isinstance(value, (GaussianRational, PolyElement)):
            return EXACT.to_complex(EXACT.coerce(value))
        if isinstance(value, str):
            return complex(float(to_rational(value)))
        if QQ.of_type(value):
            return complex(float(value))
        return complex(value)

    def conjugate(self, a: complex) -> complex:
        return a.conjugate()

    def is_zero(self, a: complex) -> bool:
        return abs(a) <= self.atol

    def div(self, a, b):
        a, b = self.coerce(a), self.coerce(b)
        if b == 0:
            raise ScalarError("non-invertible scalar")
        return a / b

    def magnitude(self, a) -> float:
        return float(abs(a))

    def to_complex(self, a) -> complex:
        return complex(a)

    def real_part(self, a) -> float:
        return float(a.real)

    def imag_part(self, a) -> float:
        return float(a.imag)

    def describe(self, a) -> str:
        a = complex(a)
        if a.imag == 0:
            return f"{a.real:.12g}"
        return f"{a.real:.12g}{a.imag:+.12g}i"


class SymbolicBackend(ScalarBackend):
    """
    参数多项式后端，系数为 sympy PolyElement（域 QQ_I，分次字典序）

    Args:
        params: 声明未定元及其共轭配对的 ParamRing
    """

    name = "symbolic"
    exact = True

    def __init__(self, params):
        self.params = params
        self.ring = params.ring
        self._imag = self.ring.ground_new(ExactBackend._IMAG)

    @property
    def zero(self):
        return self.ring.zero

    @property
    def one(self):
        return self.ring.one

    @property
    def imag(self):
        return self._imag

    def coerce(self, value: Any):
        if isinstance(value, PolyElement) and value.ring == self.ring:
            return value
        return self.ring.ground_new(EXACT.coerce(value))

    def conjugate(self, a):
        return self.params.conjugate(a)

    def is_zero(self, a) -> bool:
        return not a

    def constant(self, a) -> Optional[GaussianRational]:
        """常数多项式的值；含未定元时返回 None"""
        if not a.is_ground:
            return None
        return a.get(self.ring.zero_monom, EXACT.zero)

    def div(self, a, b):
        a, b = self.coerce(a), self.coerce(b)
        value = self.constant(b)
        if value is None or not value:
            raise ScalarError("non-invertible scalar")
        return a.mul_ground(EXACT.div(EXACT.one, value))

    def magnitude(self, a) -> float:
        value = self.constant(a)
        if value is None:
            return math.inf
        return EXACT.magnitude(value)

    def to_complex(self, a) -> complex:
        value = self.constant(a)
        if value is None:
            raise ScalarError("unbound indeterminate")
        return EXACT.to_complex(value)

    def real_part(self, a):
        value = self.constant(a)
        if value is None:
            raise ScalarError("unbound indeterminate")
        return value.x

    def imag_part(self, a):
        value = self.constant(a)
        if value is None:
            raise ScalarError("unbound indeterminate")
        return value.y

    def describe(self, a) -> str:
        return str(a.as_expr())

    def __repr__(self) -> str:
        return f"<SymbolicBackend {', '.join(self.params.names)}>"


EXACT = ExactBackend()


def get_backend(name: str, atol: Optional[float] = None) -> ScalarBackend:
    """
    按名称获取数值后端

    Args:
        name: "exact" 或 "float"
        atol: 浮点后端的判零容差

    Returns:
        对应的后端实例
    """
    if name == "exact":
        return EXACT
    if name == "float":
        return FloatBackend() if atol is None else FloatBackend(atol=atol)
    raise ValueError(f"未知的数值后端: {name}")
