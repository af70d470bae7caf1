"""
命令实现。

每个命令接收一个 RunConfig，向标准输出写结果并返回退出码：
0 成功，2 输入错误，3 定义域错误或违反实性，4 校验失败。
"""
import logging
import traceback
from pathlib import Path
from typing import Any, Callable, Dict, List

import click

from config.config import FLOAT_ATOL, RunConfig
from engine import check_suite
from models.model_space import ModelKind, build_model, orbit_invariants, split_two_form
from realization.pipeline import create_pipeline
from scalars import ScalarBackend, get_backend
from storage.result_storage import ResultStorage
from utils import formatting, json_codec
from utils.errors import DomainError, InputError, InvariantError, ScalarError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4


def _backend(config: RunConfig) -> ScalarBackend:
    try:
        return get_backend(config.backend, FLOAT_ATOL if config.backend == "float" else None)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _require_model(config: RunConfig) -> ModelKind:
    if config.model is None:
        raise InputError("请用 --model 指定 hermitian 或 para")
    return ModelKind(config.model)


def _emit(config: RunConfig, data: Any, lines: List[str]):
    """--out 时写 JSON 文件；否则按 --format 输出到终端"""
    if config.out:
        path = Path(config.out)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json_codec.dumps(data) + "\n", encoding="utf-8")
        except OSError as exc:
            raise InputError(f"无法写入 {path}: {exc}") from exc
        click.echo(f"已写入 {path}")
    if config.format == "json":
        if not config.out:
            click.echo(json_codec.dumps(data))
    else:
        for line in lines:
            click.echo(line)


def run_command(command: Callable[[RunConfig], int], config: RunConfig) -> int:
    """
    运行命令并把异常映射为退出码

    Args:
        command: cmd_* 函数
        config: 运行配置

    Returns:
        退出码
    """
    try:
        config.validate()
        return command(config)
    except InputError as exc:
        return _fail(config, f"错误: {exc}", EXIT_INPUT)
    except (DomainError, ScalarError) as exc:
        return _fail(config, f"错误: {exc}", EXIT_DOMAIN)
    except InvariantError as exc:
        return _fail(config, f"错误: 校验失败 - {exc}", EXIT_VERIFY)


def _fail(config: RunConfig, message: str, code: int) -> int:
    click.echo(message, err=True)
    if config.debug:
        click.echo(traceback.format_exc(), err=True)
    return code


def cmd_realize(config: RunConfig) -> int:
    """求解一个目标并复核"""
    kind = _require_model(config)
    backend = _backend(config)
    model = build_model(kind, backend)
    target = json_codec.form_from_json(backend, json_codec.load_argument(config.target), model=model)

    storage = ResultStorage(config.results_dir) if config.save else None
    pipeline = create_pipeline(storage, config.tolerance, config.mode)
    # 精确后端下遇到无理数直接拒绝，由用户显式改用 --backend float
    result, roundtrip = pipeline.realize(kind, target, allow_float=False, save=config.save)

    data = json_codec.result_to_json(result)
    data["roundtrip"] = {"ok": roundtrip.ok, "residual": roundtrip.residual}

    lines = ["=" * 50, f"模型: {kind.value}   模式: {result.mode}   精确: {'是' if result.exact else '否'}", "=" * 50]
    lines.append(f"参数: {result.params.describe()}")
    lines.append(f"目标:     {formatting.format_form(result.requested)}")
    lines.append(f"预测 ρ_a: {formatting.format_form(result.predicted_rho_a)}")
    lines.append(f"对齐: {result.orbit_note}")
    if result.report is not None:
        lines.extend(formatting.format_report(result.report))
    lines.append(f"复核: {'通过' if roundtrip.ok else '失败'}  (残差 {roundtrip.expression})")
    _emit(config, data, lines)

    return EXIT_OK if roundtrip.ok and result.passed else EXIT_VERIFY


def cmd_verify(config: RunConfig) -> int:
    """对给定李代数跑完整校验"""
    backend = _backend(config)
    algebra = json_codec.algebra_from_json(backend, json_codec.load_argument(config.algebra))
    kind = ModelKind(config.model) if config.model else algebra.model_kind
    report = check_suite(algebra, build_model(kind, algebra.backend), config.tolerance)

    data: Dict[str, Any] = json_codec.report_to_json(report)
    _emit(config, data, formatting.format_report(report))
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_star_table(config: RunConfig) -> int:
    """打印共享标架下的 Hodge 星表"""
    kind = ModelKind(config.model) if config.model else ModelKind.PARA
    frame = build_model(kind, _backend(config)).frame
    _emit(config, formatting.star_table_json(frame), formatting.star_table_lines(frame))
    return EXIT_OK


def cmd_decompose(config: RunConfig) -> int:
    """把 2-形式分解到 χ、Λ²₀、Λ²± 三部分"""
    kind = _require_model(config)
    backend = _backend(config)
    model = build_model(kind, backend)
    xi = json_codec.form_from_json(backend, json_codec.load_argument(config.target), model=model)
    split = split_two_form(model, xi)
    invariants = orbit_invariants(model, xi) if kind is ModelKind.HERMITIAN else None

    data: Dict[str, Any] = {
        "model": kind.value,
        "theta": [json_codec.scalar_to_json(backend, c) for c in split.c],
        "omega": json_codec.scalar_to_json(backend, split.omega_coeff),
        "parts": {
            "chi": json_codec.form_to_json(split.chi_part(model)),
            "zero": json_codec.form_to_json(split.zero_part(model)),
            "pm": json_codec.form_to_json(split.pm_part(model)),
        },
    }
    if invariants is not None:
        data["invariants"] = {
            "x": json_codec.scalar_to_json(backend, invariants.x),
            "y": json_codec.scalar_to_json(backend, invariants.y),
        }
    _emit(config, data, formatting.format_split(model, split, invariants))
    return EXIT_OK


def cmd_batch(config: RunConfig) -> int:
    """批量实现一个 JSON 列表中的目标"""
    kind = _require_model(config)
    targets = json_codec.load_argument(config.target)
    if not isinstance(targets, list):
        raise InputError("--targets 必须是 JSON 列表")

    storage = ResultStorage(config.results_dir) if config.save else None
    pipeline = create_pipeline(storage, config.tolerance, config.mode)
    results = pipeline.realize_batch(kind, targets, backend_name=config.backend,
                                     allow_float=False, workers=config.workers)
    if config.save:
        for data in results:
            if "error" not in data:
                pipeline.storage.save_result(data)

    lines = []
    for index, data in enumerate(results, 1):
        if "error" in data:
            lines.append(f"{index}. {formatting.colored_status(False)}  {data['error_type']}: {data['error']}")
        else:
            ok = data["roundtrip"]["ok"] and data["pass"]
            lines.append(f"{index}. {formatting.colored_status(ok)}  残差 {data['roundtrip']['residual']:.3e}")
    passed = sum(1 for data in results if "error" not in data and data["roundtrip"]["ok"] and data["pass"])
    lines.append(f"通过 {passed}/{len(results)}")
    _emit(config, results, lines)

    if any(data.get("error_type") == "InputError" for data in results):
        return EXIT_INPUT
    if any("error" in data for data in results):
        return EXIT_DOMAIN
    return EXIT_OK if passed == len(results) else EXIT_VERIFY


def cmd_history(config: RunConfig) -> int:
    """列出已存档的证书"""
    results = ResultStorage(config.results_dir).list_results()
    if not results:
        click.echo("没有找到已存档的证书。")
        return EXIT_OK

    lines = ["", "已存档的证书:", "=" * 80]
    for i, metadata in enumerate(results, 1):
        lines.append(f"{i}. 模型: {metadata['model']}  模式: {metadata['mode']}  "
                     f"{formatting.colored_status(metadata['passed'])}")
        lines.append(f"   ID: {metadata['id']}")
        lines.append(f"   时间: {metadata['timestamp']}")
        lines.append(f"   目标: {metadata['preview'][:100]}")
        lines.append("-" * 80)
    _emit(config, results, lines)
    return EXIT_OK


def cmd_read(config: RunConfig) -> int:
    """按 ID 或 (模型, 目标) 读取证书"""
    storage = ResultStorage(config.results_dir)
    if config.result_id:
        entry = storage.get_result_by_id(config.result_id)
    elif config.model and config.target:
        backend = _backend(config)
        model = build_model(ModelKind(config.model), backend)
        target = json_codec.form_from_json(backend, json_codec.load_argument(config.target), model=model)
        entry = storage.get_result_by_key(config.model, json_codec.form_to_json(target))
    else:
        raise InputError("请提供 --id，或同时提供 --model 与 --target")

    if entry is None:
        raise InputError("未找到指定的证书")

    content = entry["content"]
    result = json_codec.result_from_json(content)
    lines = ["", "=" * 50, f"ID: {entry['id']}", f"生成时间: {entry['timestamp']}", "=" * 50]
    lines.append(f"目标:     {formatting.format_form(result.requested)}")
    lines.append(f"预测 ρ_a: {formatting.format_form(result.predicted_rho_a)}")
    lines.append(f"参数: {result.params.describe()}")
    if result.report is not None:
        lines.extend(formatting.format_report(result.report))
    _emit(config, content, lines)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "realize": cmd_realize,
    "verify": cmd_verify,
    "star-table": cmd_star_table,
    "decompose": cmd_decompose,
    "batch": cmd_batch,
    "history": cmd_history,
    "read": cmd_read,
}


def dispatch(config: RunConfig) -> int:
    """按 config.subcommand 运行对应命令"""
    command = COMMANDS.get(config.subcommand)
    if command is None:
        click.echo(f"错误: 未知的子命令 {config.subcommand}", err=True)
        return EXIT_INPUT
    logger.debug("运行 %s", config.subcommand)
    return run_command(command, config)
