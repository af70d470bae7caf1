# 交错 Ricci 张量的实现求解器
"""
求解器模块。

给定模型空间中的目标 2-形式 Ξ（Ω 分量为 0），构造李代数使其唯一的
Kähler–Weyl 结构的 ρ_a 等于 Ξ：

- para：先在 (θ₁, θ₂) 平面旋转消去 θ₁ 分量，取 α₂ = α̃₂ = 1 读出其余参数，
  再沿 U⁻¹ 搬运括号回到原目标；Ξ = 0 时取阿贝尔代数
- Hermitian：由轨道不变量 (x, y) 取 α₂ = 1、α₃ = √(x/2)、ε₁ = √(y/2)；
  exact_align 模式再用结构群元素把轨道代表元对齐到 Ξ

度量与 J 固定不动，移动的是括号 [x, y]′ = W⁻¹[Wx, Wy]。
"""
import logging
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

from config.config import FLOAT_ATOL
from engine.checks import DEFAULT_TOLERANCE, VerificationReport, check_suite, form_residual
from engine.lie_algebra import LieAlgebra4, conjugate_bracket, real_structure_constants
from exterior import KForm
from models.model_space import ModelKind, ModelSpace, build_model, orbit_invariants, split_two_form
from models.unitary import UnitaryElement, align_hermitian, induced_action, normalize_theta1
from realization.family import FamilyParams, family_algebra, rho_a_closed_form
from scalars import ScalarBackend, exact_sqrt, get_backend
from utils.errors import DomainError, InvariantError, RealityViolation

logger = logging.getLogger(__name__)

HERMITIAN_MODES = ("exact_align", "orbit")


@dataclass(frozen=True, eq=False)
class RealizationResult:
    """
    实现结果

    Attributes:
        kind: 模型类型
        algebra: 实现目标的李代数
        conjugation: 搬运括号所用的结构群元素（无需搬运时为单位元）
        predicted_rho_a: 闭式公式经 conjugation 搬运后的 ρ_a
        target: 实现的目标（orbit 模式下为轨道代表元）
        requested: 用户给出的目标 Ξ
        report: 校验报告
        orbit_note: 对齐方式说明
        params: 参数族取值
        mode: "para"、"exact_align" 或 "orbit"
        exact: 全程是否为精确算术
        real_algebra: Hermitian 情形底层实李代数在实基下的结构常数
    """

    kind: ModelKind
    algebra: LieAlgebra4
    conjugation: UnitaryElement
    predicted_rho_a: KForm
    target: KForm
    requested: KForm
    report: Optional[VerificationReport]
    orbit_note: str
    params: FamilyParams
    mode: str
    exact: bool
    real_algebra: Optional[LieAlgebra4] = None

    @property
    def backend(self) -> ScalarBackend:
        return self.algebra.backend

    @property
    def passed(self) -> bool:
        return self.report is not None and self.report.passed


class RoundTrip(NamedTuple):
    """verify_roundtrip 的结果"""
    ok: bool
    residual: float
    expression: str


def _precondition(model: ModelSpace, target: KForm, subspace: str):
    split = split_two_form(model, target)
    if not model.backend.is_zero(split.omega_coeff):
        raise DomainError(f"target outside {subspace}")
    return split


def _attach_report(result: RealizationResult, model: ModelSpace, tolerance: float) -> RealizationResult:
    report = check_suite(result.algebra, model, tolerance)
    if report.rho_a is not None:
        report = report.with_residual(form_residual("rho_a_vs_target", report.rho_a, result.target, tolerance))
        report = report.with_residual(
            form_residual("rho_a_vs_closed_form", report.rho_a, result.predicted_rho_a, tolerance))
    if not report.passed:
        logger.warning("实现结果未通过校验: %s", ", ".join(report.failures))
    return replace(result, report=report)


def solve_para(target: KForm, allow_float: bool = True, tolerance: float = DEFAULT_TOLERANCE,
               with_report: bool = True) -> RealizationResult:
    """
    para 模型中实现 Ξ ∈ Λ²₀,₋ ⊕ Λ²₊

    Args:
        target: 目标 2-形式（实系数）
        allow_float: 精确旋转不存在时是否退回浮点
        tolerance: 浮点容差
        with_report: 是否附带完整校验报告

    Returns:
        RealizationResult

    Raises:
        DomainError: Ω 分量非零，或需要浮点却不允许
        RealityViolation: 目标不是实形式
    """
    model = build_model(ModelKind.PARA, target.backend)
    _precondition(model, target, "Λ²₀,₋⊕Λ²₊")
    if not all(model.backend.is_real(v) for v in target.coeffs):
        raise RealityViolation("para 目标必须是实形式")

    element, normalized = normalize_theta1(model, target, allow_float)
    backend = normalized.backend
    model = model.with_backend(backend)
    requested = target.to_backend(backend)

    # Ξ = 0 取阿贝尔代数
    alpha2 = backend.zero if normalized.is_zero() else backend.one
    params = FamilyParams.para(
        eps1=normalized[(0, 1)],
        alpha3=normalized[(0, 3)],
        alpha3t=-normalized[(1, 2)],
        eps1t=normalized[(2, 3)],
        alpha2=alpha2,
        alpha2t=alpha2,
        backend=backend,
    )
    algebra = family_algebra(params)
    predicted = rho_a_closed_form(params)
    if not element.is_identity():
        inverse = element.inverse()
        algebra = conjugate_bracket(algebra, inverse)
        predicted = induced_action(model, inverse, predicted)
        logger.info("θ₁ 分量非零，已沿 U⁻¹ 搬运括号")

    result = RealizationResult(
        kind=ModelKind.PARA,
        algebra=algebra,
        conjugation=element,
        predicted_rho_a=predicted,
        target=requested,
        requested=requested,
        report=None,
        orbit_note="",
        params=params,
        mode="para",
        exact=backend.exact,
    )
    return _attach_report(result, model, tolerance) if with_report else result


def _orbit_root(backend: ScalarBackend, value, allow_float: bool):
    """√(value/2)；返回 (根, 是否精确)"""
    half = backend.div(value, 2)
    if backend.exact:
        root = exact_sqrt(backend.real_part(half))
        if root is not None:
            return backend.coerce(root), True
        if not allow_float:
            raise DomainError("exact backend requires irrational parameters")
        return None, False
    return backend.coerce(max(backend.real_part(half), 0.0) ** 0.5), False


def solve_hermitian(target: KForm, mode: str = "exact_align", allow_float: bool = True,
                    tolerance: float = DEFAULT_TOLERANCE, with_report: bool = True) -> RealizationResult:
    """
    Hermitian 模型中实现实形式 Ξ ∈ Λ²₀,₊ ⊕ Λ²₋

    Args:
        target: 目标实 2-形式
        mode: "exact_align"（对齐到 Ξ 本身）或 "orbit"（只实现 Ξ 的轨道）
        allow_float: 需要无理数时是否退回浮点
        tolerance: 浮点容差
        with_report: 是否附带完整校验报告

    Returns:
        RealizationResult

    Raises:
        RealityViolation: Ξ 不是实形式
        DomainError: Ω 分量非零，或需要浮点却不允许
    """
    if mode not in HERMITIAN_MODES:
        raise DomainError(f"未知的 Hermitian 模式: {mode}")
    model = build_model(ModelKind.HERMITIAN, target.backend)
    _precondition(model, target, "Λ²₀,₊⊕Λ²₋")
    x, y = orbit_invariants(model, target)

    backend = model.backend
    alpha3, exact_alpha = _orbit_root(backend, x, allow_float)
    eps1, exact_eps = _orbit_root(backend, y, allow_float)
    if not (exact_alpha and exact_eps) and backend.exact:
        logger.warning("√(x/2) 或 √(y/2) 不是有理数，改用浮点后端")
        backend = get_backend("float", FLOAT_ATOL)
        model = model.with_backend(backend)
        x, y = backend.coerce(x), backend.coerce(y)
        alpha3, _ = _orbit_root(backend, x, True)
        eps1, _ = _orbit_root(backend, y, True)
    requested = target.to_backend(backend)

    alpha2 = backend.zero if requested.is_zero() else backend.one
    params = FamilyParams.hermitian(eps1=eps1, alpha2=alpha2, alpha3=alpha3, backend=backend)
    algebra = family_algebra(params)
    representative = rho_a_closed_form(params)
    reached = orbit_invariants(model, representative)
    for got, expected in zip(reached, (x, y)):
        if not backend.is_zero(got - expected) and backend.magnitude(got - expected) > tolerance:
            raise InvariantError("轨道代表元的不变量与目标不一致")

    element = UnitaryElement.identity(ModelKind.HERMITIAN, backend)
    predicted = representative
    if mode == "orbit":
        realized_target = representative
        note = "orbit: realized the orbit representative with the same invariants"
    else:
        element = align_hermitian(model, representative, requested, allow_float)
        if element.backend != backend:
            # 对齐退回了浮点
            backend = element.backend
            model = model.with_backend(backend)
            params = params.to_backend(backend)
            algebra = algebra.to_backend(backend)
            requested = requested.to_backend(backend)
            predicted = predicted.to_backend(backend)
        algebra = conjugate_bracket(algebra, element)
        predicted = induced_action(model, element, predicted)
        realized_target = requested
        note = "exact_align: bracket conjugated onto the requested target"
    logger.info("Hermitian 求解完成（%s，%s）", mode, backend.name)

    result = RealizationResult(
        kind=ModelKind.HERMITIAN,
        algebra=algebra,
        conjugation=element,
        predicted_rho_a=predicted,
        target=realized_target,
        requested=requested,
        report=None,
        orbit_note=note,
        params=params,
        mode=mode,
        exact=backend.exact,
        real_algebra=real_structure_constants(algebra, model),
    )
    return _attach_report(result, model, tolerance) if with_report else result


def solve(kind, target: KForm, mode: str = "exact_align", allow_float: bool = True,
          tolerance: float = DEFAULT_TOLERANCE, with_report: bool = True) -> RealizationResult:
    """按模型类型分派到 solve_para / solve_hermitian"""
    if ModelKind(kind) is ModelKind.PARA:
        return solve_para(target, allow_float, tolerance, with_report)
    return solve_hermitian(target, mode, allow_float, tolerance, with_report)


def verify_roundtrip(result: RealizationResult, tolerance: float = DEFAULT_TOLERANCE) -> RoundTrip:
    """
    对 result.algebra 独立重跑完整流水线，比较 ρ_a 与 result.target

    orbit 模式下还比较 ρ_a 与用户目标的轨道不变量。

    Returns:
        RoundTrip(ok, 最大残差, 残差文字形式)
    """
    model = build_model(result.kind, result.backend)
    report = check_suite(result.algebra, model, tolerance)
    if report.rho_a is None:
        return RoundTrip(False, float("inf"), "structure not integrable")

    residual = form_residual("rho_a_vs_target", report.rho_a, result.target.to_backend(result.backend), tolerance)
    ok = report.passed and residual.passed
    max_abs, expression = residual.max_abs, residual.expression

    if result.mode == "orbit":
        backend = result.backend
        got = orbit_invariants(model, report.rho_a)
        expected = orbit_invariants(model, result.requested.to_backend(backend))
        gaps = [backend.magnitude(a - b) for a, b in zip(got, expected)]
        if backend.exact:
            ok = ok and all(backend.is_zero(a - b) for a, b in zip(got, expected))
        else:
            ok = ok and max(gaps) <= tolerance
        max_abs = max([max_abs] + gaps)
    return RoundTrip(ok, max_abs, expression)
