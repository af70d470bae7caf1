# 人类可读的表格输出
"""
格式化模块，把形式、分解和校验报告排版成终端文本。
负号统一使用 U+2212，与数学排版一致。
"""
from typing import Any, List, Sequence

from colorama import Fore, Style

from engine.checks import VerificationReport
from exterior import BasisFrame, KForm, basis_monomials, hodge_star
from models.model_space import ModelSpace, OrbitInvariants, TwoFormSplit
from scalars import ScalarBackend
from utils.errors import ScalarError
from utils.json_codec import form_to_json

MINUS = "−"
SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def superscript(n: int) -> str:
    return str(n).translate(SUPERSCRIPTS)


def subscript(n: int) -> str:
    return str(n).translate(SUBSCRIPTS)


def format_monomial(indices: Sequence[int], symbol: str = "Ψ") -> str:
    """(0, 2) → Ψ¹∧Ψ³"""
    if not indices:
        return "1"
    return "∧".join(f"{symbol}{superscript(i + 1)}" for i in indices)


def format_scalar(backend: ScalarBackend, value: Any) -> str:
    return backend.describe(value).replace("-", MINUS)


def format_form(form: KForm, symbol: str = "Ψ") -> str:
    """
    形式的排版，如 −Ψ²∧Ψ⁴ 或 1/2Ψ¹ − Ψ³

    系数为 ±1 时省略
    """
    backend = form.backend
    pieces: List[str] = []
    for monomial, value in form.items():
        negative = _is_negative(backend, value)
        magnitude = -value if negative else value
        if backend.is_zero(magnitude - backend.one):
            coefficient = ""
        elif _is_plain_number(backend, magnitude):
            coefficient = format_scalar(backend, magnitude)
        else:
            coefficient = f"({format_scalar(backend, magnitude)})"
        term = f"{coefficient}{format_monomial(monomial, symbol)}"
        if not pieces:
            pieces.append(f"{MINUS}{term}" if negative else term)
        else:
            pieces.append(f" {MINUS} {term}" if negative else f" + {term}")
    return "".join(pieces) or "0"


def _is_plain_number(backend: ScalarBackend, value: Any) -> bool:
    try:
        return backend.is_real(value) and backend.real_part(value) >= 0
    except ScalarError:
        return False


def _is_negative(backend: ScalarBackend, value: Any) -> bool:
    try:
        return backend.is_real(value) and backend.real_part(value) < 0
    except ScalarError:
        return False


def star_table_lines(frame: BasisFrame) -> List[str]:
    """1、2、3 次基单项式的 Hodge 星表，共 14 行"""
    lines = []
    for degree in (1, 2, 3):
        for monomial in basis_monomials(degree):
            image = hodge_star(frame, KForm.monomial(frame.backend, *monomial))
            lines.append(f"⋆{format_monomial(monomial, frame.symbol)}={format_form(image, frame.symbol)}")
    return lines


def star_table_json(frame: BasisFrame) -> dict:
    table = {}
    for degree in (1, 2, 3):
        for monomial in basis_monomials(degree):
            key = "".join(str(i + 1) for i in monomial)
            table[key] = form_to_json(hodge_star(frame, KForm.monomial(frame.backend, *monomial)))
    return table


def format_split(model: ModelSpace, split: TwoFormSplit, invariants: OrbitInvariants = None) -> List[str]:
    backend = model.backend
    lines = [f"模型: {model.kind.value}"]
    for index, value in enumerate(split.c, 1):
        lines.append(f"  c{subscript(index)} (θ{subscript(index)}) = {format_scalar(backend, value)}")
    lines.append(f"  Ω 分量 = {format_scalar(backend, split.omega_coeff)}")
    lines.append(f"  χ 部分:   {format_form(split.chi_part(model))}")
    lines.append(f"  Λ²₀ 部分: {format_form(split.zero_part(model))}")
    lines.append(f"  Λ²± 部分: {format_form(split.pm_part(model))}")
    if invariants is not None:
        lines.append(f"  轨道不变量 x = |ξ₀|² = {format_scalar(backend, invariants.x)}")
        lines.append(f"  轨道不变量 y = |ξ±|² = {format_scalar(backend, invariants.y)}")
    return lines


def colored_status(passed: bool) -> str:
    if passed:
        return f"{Fore.GREEN}PASS{Style.RESET_ALL}"
    return f"{Fore.RED}FAIL{Style.RESET_ALL}"


def format_report(report: VerificationReport) -> List[str]:
    lines = [f"校验结果: {colored_status(report.passed)}  (后端: {report.backend}, 容差: {report.tolerance:g})"]
    lines.append("-" * 50)
    width = max((len(r.name) for r in report.residuals), default=0)
    for residual in report.residuals:
        lines.append(f"  {residual.name.ljust(width)}  {colored_status(residual.passed)}  {residual.expression}")
    if report.rho_a is not None:
        lines.append(f"  ρ_a = {format_form(report.rho_a)}")
    for note in report.notes:
        lines.append(f"  注: {note}")
    return lines
