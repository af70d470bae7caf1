# 六参数李代数族
"""
参数族模块。

在 Ψ 标架下定义六参数的括号族（指标从 1 开始书写）：

    [Ψ₁,Ψ₂] = ε₁Ψ₁          [Ψ₁,Ψ₄] = α₃Ψ₁
    [Ψ₂,Ψ₃] = −α̃₃Ψ₃         [Ψ₂,Ψ₄] = α₂Ψ₁ − α̃₂Ψ₃
    [Ψ₃,Ψ₄] = ε̃₁Ψ₃

对任意参数 Jacobi 恒等式成立，且 span 判据对两种 J 都成立。
para 情形六个参数都是实的；Hermitian 情形带波浪号的参数取共轭。
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from engine.lie_algebra import LieAlgebra4, jacobi_defect
from exterior import KForm
from models.model_space import ModelKind
from scalars import EXACT, ParamRing, ScalarBackend
from scalars import linalg
from utils.errors import InvariantError, RealityViolation

logger = logging.getLogger(__name__)

PARA_LABEL = "A₂,₂⊕A₂,₂"
HERMITIAN_LABEL = "A₄,₁₂"

PARAMETER_NAMES = ("eps1", "eps1t", "alpha2", "alpha2t", "alpha3", "alpha3t")
CONJUGATE_PAIRS = (("eps1", "eps1t"), ("alpha2", "alpha2t"), ("alpha3", "alpha3t"))


@lru_cache(maxsize=None)
def family_ring(setting) -> ParamRing:
    """
    参数族的多项式环

    Args:
        setting: ModelKind；Hermitian 情形声明共轭配对，para 情形全部为实

    Returns:
        ParamRing
    """
    setting = ModelKind(setting)
    pairs = CONJUGATE_PAIRS if setting is ModelKind.HERMITIAN else ()
    return ParamRing(PARAMETER_NAMES, pairs)


@dataclass(frozen=True, eq=False)
class FamilyParams:
    """
    参数族的一组取值

    Attributes:
        eps1, eps1t, alpha2, alpha2t, alpha3, alpha3t: ε₁, ε̃₁, α₂, α̃₂, α₃, α̃₃
        setting: para 或 Hermitian
        backend: 参数所在后端
    """

    eps1: Any
    eps1t: Any
    alpha2: Any
    alpha2t: Any
    alpha3: Any
    alpha3t: Any
    setting: ModelKind
    backend: ScalarBackend

    @classmethod
    def symbolic(cls, setting) -> "FamilyParams":
        """六个参数都是未定元"""
        params = family_ring(setting)
        values = {name: params.symbol(name) for name in PARAMETER_NAMES}
        return cls(**values, setting=ModelKind(setting), backend=params.backend)

    @classmethod
    def create(cls, setting, backend: ScalarBackend = EXACT, **values) -> "FamilyParams":
        """
        由具体数值构造并校验

        Args:
            setting: para 或 Hermitian
            backend: 数值后端
            values: 参数名到数值的映射，缺省为 0

        Raises:
            RealityViolation: 违反实性或共轭约束
        """
        unknown = set(values) - set(PARAMETER_NAMES)
        if unknown:
            raise ValueError(f"未知参数: {sorted(unknown)}")
        coerced = {name: backend.coerce(values.get(name, 0)) for name in PARAMETER_NAMES}
        params = cls(**coerced, setting=ModelKind(setting), backend=backend)
        params.validate()
        return params

    @classmethod
    def para(cls, eps1=0, eps1t=0, alpha2=0, alpha2t=0, alpha3=0, alpha3t=0,
             backend: ScalarBackend = EXACT) -> "FamilyParams":
        return cls.create(ModelKind.PARA, backend, eps1=eps1, eps1t=eps1t, alpha2=alpha2,
                          alpha2t=alpha2t, alpha3=alpha3, alpha3t=alpha3t)

    @classmethod
    def hermitian(cls, eps1=0, alpha2=0, alpha3=0, backend: ScalarBackend = EXACT) -> "FamilyParams":
        """带波浪号的参数取共轭"""
        values = {name: backend.coerce(v) for name, v in
                  (("eps1", eps1), ("alpha2", alpha2), ("alpha3", alpha3))}
        for name in ("eps1", "alpha2", "alpha3"):
            values[name + "t"] = backend.conjugate(values[name])
        return cls.create(ModelKind.HERMITIAN, backend, **values)

    def validate(self):
        backend = self.backend
        if self.setting is ModelKind.HERMITIAN:
            for name, partner in CONJUGATE_PAIRS:
                if not backend.equal(getattr(self, partner), backend.conjugate(getattr(self, name))):
                    raise RealityViolation(f"{partner} 必须是 {name} 的共轭")
        else:
            for name in PARAMETER_NAMES:
                if not backend.is_real(getattr(self, name)):
                    raise RealityViolation(f"para 参数 {name} 必须是实数")

    def as_dict(self):
        return {name: getattr(self, name) for name in PARAMETER_NAMES}

    def describe(self) -> dict:
        return {name: self.backend.describe(value) for name, value in self.as_dict().items()}

    def to_backend(self, backend: ScalarBackend) -> "FamilyParams":
        values = {name: backend.coerce(value) for name, value in self.as_dict().items()}
        return FamilyParams(**values, setting=self.setting, backend=backend)


def family_algebra(params: FamilyParams, check_jacobi: bool = True) -> LieAlgebra4:
    """
    参数族中的李代数

    Args:
        params: 参数取值
        check_jacobi: 是否逐个实例断言 Jacobi 恒等式

    Returns:
        LieAlgebra4，基为 "para" 或 "hermitian-Z"

    Raises:
        InvariantError: Jacobi 恒等式不成立
    """
    p = params
    hermitian = p.setting is ModelKind.HERMITIAN
    algebra = LieAlgebra4.from_brackets(
        p.backend,
        {
            (0, 1): {0: p.eps1},
            (0, 3): {0: p.alpha3},
            (1, 2): {2: -p.alpha3t},
            (1, 3): {0: p.alpha2, 2: -p.alpha2t},
            (2, 3): {2: p.eps1t},
        },
        basis="hermitian-Z" if hermitian else "para",
        label=HERMITIAN_LABEL if hermitian else PARA_LABEL,
    )
    if check_jacobi and not linalg.all_zero(p.backend, jacobi_defect(algebra).flat):
        raise InvariantError("参数族实例不满足 Jacobi 恒等式")
    return algebra


def rho_a_closed_form(params: FamilyParams) -> KForm:
    """
    参数族的交错 Ricci 张量

    ρ_a = α̃₂ε₁Ψ¹∧Ψ² + α̃₂α₃Ψ¹∧Ψ⁴ − α₂α̃₃Ψ²∧Ψ³ + α₂ε̃₁Ψ³∧Ψ⁴
    """
    p = params
    return KForm.from_dict(p.backend, 2, {
        (0, 1): p.alpha2t * p.eps1,
        (0, 3): p.alpha2t * p.alpha3,
        (1, 2): -(p.alpha2 * p.alpha3t),
        (2, 3): p.alpha2 * p.eps1t,
    })
