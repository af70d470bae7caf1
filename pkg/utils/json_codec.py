# JSON 编解码
"""
JSON 编解码模块。

- 标量：精确实数写成 "p/q"，精确复数写成 {"re": "p/q", "im": "p/q"}，
  浮点写成 {"re": f, "im": f}
- k-形式：{"degree": k, "coeffs": {"13": 标量}}，键为从 1 开始的升序指标；
  2-形式目标还可以写成 {"theta": [c1..c5], "omega": c} 或字面量 "zero"
- 李代数：{"basis": ..., "c": {"12": {"1": 标量}}, "label": ...}
- 校验报告与实现结果：见 report_to_json / result_to_json

解析失败一律抛出 InputError。
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from config.config import FLOAT_ATOL
from engine.checks import Residual, VerificationReport
from engine.lie_algebra import BASES, LieAlgebra4
from exterior import DIMENSION, KForm
from models.model_space import ModelKind, ModelSpace, TwoFormSplit
from models.unitary import UnitaryElement
from realization.family import PARAMETER_NAMES, FamilyParams
from realization.solvers import RealizationResult
from scalars import EXACT, ScalarBackend, format_rational, get_backend, to_rational
from scalars import linalg
from utils.errors import InputError

logger = logging.getLogger(__name__)

JsonValue = Union[str, int, float, bool, None, Dict[str, Any], list]


def dumps(data: JsonValue) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2)


def load_argument(text: str) -> JsonValue:
    """
    解析命令行参数中的 JSON：内联文本、@文件路径或字面量 zero

    Raises:
        InputError: 文件不存在或 JSON 格式错误
    """
    if text is None:
        raise InputError("缺少 JSON 参数")
    text = text.strip()
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            text = path.read_text(encoding="utf-8").strip()
        except OSError as exc:
            raise InputError(f"无法读取文件 {path}: {exc}") from exc
    if text == "zero":
        return "zero"
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"JSON 格式错误: {exc}") from exc


def backend_by_name(name: str) -> ScalarBackend:
    try:
        return get_backend(name)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# 标量

def scalar_to_json(backend: ScalarBackend, value: Any) -> JsonValue:
    if backend.exact:
        value = EXACT.coerce(value)
        if not EXACT.imag_part(value):
            return format_rational(EXACT.real_part(value))
        return {"re": format_rational(value.x), "im": format_rational(value.y)}
    value = complex(value)
    return {"re": value.real, "im": value.imag}


def _rational(raw: Any):
    try:
        return to_rational(raw)
    except (ValueError, TypeError) as exc:
        raise InputError(f"无法解析标量: {raw!r}") from exc


def scalar_from_json(backend: ScalarBackend, raw: JsonValue) -> Any:
    """
    解析标量

    Raises:
        InputError: 无法解析
    """
    if isinstance(raw, dict):
        if set(raw) - {"re", "im"}:
            raise InputError(f"复数标量只允许 re / im 字段: {raw}")
        re, im = raw.get("re", 0), raw.get("im", 0)
        if backend.exact:
            return backend.coerce(_rational(re)) + backend.coerce(_rational(im)) * backend.imag
        try:
            return complex(float(re), float(im))
        except (TypeError, ValueError) as exc:
            raise InputError(f"无法解析标量: {raw!r}") from exc
    if isinstance(raw, bool) or not isinstance(raw, (str, int, float)):
        raise InputError(f"无法解析标量: {raw!r}")
    if backend.exact:
        return backend.coerce(_rational(raw))
    try:
        return backend.coerce(float(_rational(raw)) if isinstance(raw, str) else raw)
    except (TypeError, ValueError) as exc:
        raise InputError(f"无法解析标量: {raw!r}") from exc


# 形式

def _index_key(indices) -> str:
    return "".join(str(i + 1) for i in indices)


def _parse_indices(key: str, degree: Optional[int] = None):
    if not key.isdigit() or any(not 1 <= int(ch) <= DIMENSION for ch in key):
        raise InputError(f"无效的指标键: {key!r}")
    indices = tuple(int(ch) - 1 for ch in key)
    if degree is not None and len(indices) != degree:
        raise InputError(f"指标键 {key!r} 与次数 {degree} 不符")
    return indices


def form_to_json(form: KForm) -> Dict[str, Any]:
    return {
        "degree": form.degree,
        "coeffs": {_index_key(m): scalar_to_json(form.backend, v) for m, v in form.items()},
    }


def form_from_json(backend: ScalarBackend, raw: JsonValue, degree: int = 2,
                   model: Optional[ModelSpace] = None) -> KForm:
    """
    解析 k-形式

    Args:
        backend: 目标后端
        raw: JSON 数据
        degree: 未写 degree 字段时的次数
        model: 解析 θ 坐标时使用的模型空间

    Raises:
        InputError: 格式错误
    """
    if raw == "zero":
        return KForm.zero(backend, degree)
    if not isinstance(raw, dict):
        raise InputError("形式必须是 JSON 对象或 \"zero\"")
    if "theta" in raw:
        if model is None:
            raise InputError("θ 坐标需要指定模型")
        thetas = raw["theta"]
        if not isinstance(thetas, list) or len(thetas) != 5:
            raise InputError("theta 必须是 5 个标量的数组")
        model = model.with_backend(backend) if model.backend != backend else model
        split = TwoFormSplit(
            tuple(scalar_from_json(backend, c) for c in thetas),
            scalar_from_json(backend, raw.get("omega", 0)),
        )
        return split.assemble(model)
    if "coeffs" not in raw or not isinstance(raw["coeffs"], dict):
        raise InputError("形式缺少 coeffs 字段")
    degree = raw.get("degree", degree)
    if not isinstance(degree, int) or not 0 <= degree <= DIMENSION:
        raise InputError(f"无效的次数: {degree!r}")
    mapping = {}
    for key, value in raw["coeffs"].items():
        indices = _parse_indices(key, degree)
        if len(set(indices)) != len(indices):
            raise InputError(f"指标键 {key!r} 有重复指标")
        mapping[indices] = scalar_from_json(backend, value)
    return KForm.from_dict(backend, degree, mapping)


# 李代数

def algebra_to_json(algebra: LieAlgebra4) -> Dict[str, Any]:
    brackets = {}
    for i in range(DIMENSION):
        for j in range(i + 1, DIMENSION):
            row = {
                str(k + 1): scalar_to_json(algebra.backend, algebra.constants[i, j, k])
                for k in range(DIMENSION)
                if not algebra.backend.is_zero(algebra.constants[i, j, k])
            }
            if row:
                brackets[f"{i + 1}{j + 1}"] = row
    data = {"basis": algebra.basis, "c": brackets}
    if algebra.label:
        data["label"] = algebra.label
    return data


def algebra_from_json(backend: ScalarBackend, raw: JsonValue) -> LieAlgebra4:
    """
    解析李代数

    Raises:
        InputError: 格式错误或结构常数不反对称
    """
    if not isinstance(raw, dict) or not isinstance(raw.get("c"), dict):
        raise InputError("李代数 JSON 必须包含对象 c")
    basis = raw.get("basis", "para")
    if basis not in BASES:
        raise InputError(f"未知的基: {basis!r}")
    brackets = {}
    for key, row in raw["c"].items():
        i, j = _parse_indices(key, 2)
        if i == j:
            raise InputError(f"括号键 {key!r} 的两个指标相同")
        if not isinstance(row, dict):
            raise InputError(f"括号 {key!r} 必须是对象")
        brackets[(i, j)] = {_parse_indices(k, 1)[0]: scalar_from_json(backend, v) for k, v in row.items()}
    try:
        return LieAlgebra4.from_brackets(backend, brackets, basis=basis, label=raw.get("label"))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# 校验报告

def report_to_json(report: VerificationReport) -> Dict[str, Any]:
    backend = backend_by_name(report.backend) if report.backend in ("exact", "float") else None
    data = {
        "pass": report.passed,
        "backend": report.backend,
        "tolerance": report.tolerance,
        "residuals": {
            r.name: {"max_abs": r.max_abs, "expression": r.expression, "pass": r.passed}
            for r in report.residuals
        },
        "notes": list(report.notes),
        "rho_a": None,
        "scalar_curvature": None,
    }
    if backend is not None and report.rho_a is not None:
        data["rho_a"] = form_to_json(report.rho_a)
        data["scalar_curvature"] = scalar_to_json(backend, report.scalar_curvature)
    return data


def report_from_json(raw: JsonValue) -> VerificationReport:
    try:
        backend = backend_by_name(raw["backend"])
        residuals = tuple(
            Residual(name, float(item["max_abs"]), str(item["expression"]), bool(item["pass"]))
            for name, item in raw["residuals"].items()
        )
        rho_a = raw.get("rho_a")
        curvature = raw.get("scalar_curvature")
        return VerificationReport(
            residuals=residuals,
            passed=bool(raw["pass"]),
            backend=raw["backend"],
            tolerance=float(raw["tolerance"]),
            notes=tuple(raw.get("notes", ())),
            rho_a=None if rho_a is None else form_from_json(backend, rho_a),
            scalar_curvature=None if curvature is None else scalar_from_json(backend, curvature),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"校验报告格式错误: {exc}") from exc


# 实现结果

def _matrix_to_json(backend: ScalarBackend, matrix) -> list:
    return [[scalar_to_json(backend, v) for v in row] for row in matrix]


def result_to_json(result: RealizationResult) -> Dict[str, Any]:
    backend = result.backend
    return {
        "model": result.kind.value,
        "mode": result.mode,
        "exact": result.exact,
        "pass": result.passed,
        "algebra": algebra_to_json(result.algebra),
        "conjugation": {
            "block": _matrix_to_json(backend, result.conjugation.block),
            "matrix": _matrix_to_json(backend, result.conjugation.matrix),
        },
        "params": {name: scalar_to_json(backend, v) for name, v in result.params.as_dict().items()},
        "predicted_rho_a": form_to_json(result.predicted_rho_a),
        "target": form_to_json(result.target),
        "requested": form_to_json(result.requested),
        "orbit_note": result.orbit_note,
        "real_algebra": None if result.real_algebra is None else algebra_to_json(result.real_algebra),
        "report": None if result.report is None else report_to_json(result.report),
    }


def result_from_json(raw: JsonValue) -> RealizationResult:
    """
    解析实现结果

    Raises:
        InputError: 格式错误
    """
    try:
        kind = ModelKind(raw["model"])
        backend = EXACT if raw["exact"] else get_backend("float", FLOAT_ATOL)
        block = linalg.from_rows(
            backend, [[scalar_from_json(backend, v) for v in row] for row in raw["conjugation"]["block"]])
        params = FamilyParams(
            **{name: scalar_from_json(backend, raw["params"][name]) for name in PARAMETER_NAMES},
            setting=kind,
            backend=backend,
        )
        real_algebra = raw.get("real_algebra")
        report = raw.get("report")
        return RealizationResult(
            kind=kind,
            algebra=algebra_from_json(backend, raw["algebra"]),
            conjugation=UnitaryElement(kind, block, backend),
            predicted_rho_a=form_from_json(backend, raw["predicted_rho_a"]),
            target=form_from_json(backend, raw["target"]),
            requested=form_from_json(backend, raw["requested"]),
            report=None if report is None else report_from_json(report),
            orbit_note=raw.get("orbit_note", ""),
            params=params,
            mode=raw["mode"],
            exact=bool(raw["exact"]),
            real_algebra=None if real_algebra is None else algebra_from_json(backend, real_algebra),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"实现结果格式错误: {exc}") from exc
