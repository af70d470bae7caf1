#!/usr/bin/env python

"""
四维 Kähler–Weyl 精确计算引擎 - 命令行入口程序
"""

import sys
from pathlib import Path

import click
from colorama import init as colorama_init


# 添加项目根目录到Python路径
project_root = Path(__file__).parent.absolute()
sys.path.insert(0, str(project_root))


from cli import dispatch
from config.config import (
    BACKENDS,
    DEBUG,
    DEFAULT_BACKEND,
    DEFAULT_HERMITIAN_MODE,
    DEFAULT_TOLERANCE,
    FORMATS,
    HERMITIAN_MODES,
    MODELS,
    WORKERS,
    RunConfig,
)


model_option = click.option('--model', type=click.Choice(MODELS), help='模型空间: hermitian 或 para')
results_dir_option = click.option('--results-dir', envvar='KW4_RESULTS_DIR', default=None,
                                  help='证书目录')


def _run(ctx: click.Context, subcommand: str, **options):
    config = RunConfig(subcommand=subcommand, **ctx.obj, **options)
    ctx.exit(dispatch(config))


@click.group()
@click.option('--backend', type=click.Choice(BACKENDS), envvar='KW4_BACKEND', default=DEFAULT_BACKEND,
              show_default=True, help='数值后端')
@click.option('--tol', 'tolerance', type=float, default=DEFAULT_TOLERANCE, show_default=True,
              help='浮点后端的容差')
@click.option('--format', 'format', type=click.Choice(FORMATS), default='table', show_default=True,
              help='输出格式')
@click.option('--out', type=click.Path(dir_okay=False), help='把 JSON 结果写入文件')
@click.option('--debug', is_flag=True, default=DEBUG, help='出错时打印堆栈')
@click.pass_context
def cli(ctx, backend, tolerance, format, out, debug):
    """四维 Kähler–Weyl 引擎 - 在 A₂,₂⊕A₂,₂ 与 A₄,₁₂ 参数族上实现给定的 ρ_a"""
    ctx.obj = {'backend': backend, 'tolerance': tolerance, 'format': format, 'out': out, 'debug': debug}


@cli.command()
@model_option
@click.option('--target', required=True, help='目标 2-形式: 内联 JSON、@文件 或 zero')
@click.option('--mode', type=click.Choice(HERMITIAN_MODES), default=DEFAULT_HERMITIAN_MODE,
              show_default=True, help='Hermitian 求解模式')
@click.option('--save', is_flag=True, help='存档证书')
@results_dir_option
@click.pass_context
def realize(ctx, model, target, mode, save, results_dir):
    """求出一个李代数使其 ρ_a 等于目标形式"""
    _run(ctx, 'realize', model=model, target=target, mode=mode, save=save, results_dir=results_dir)


@cli.command()
@model_option
@click.option('--algebra', required=True, help='李代数结构常数: 内联 JSON 或 @文件')
@click.pass_context
def verify(ctx, model, algebra):
    """对给定李代数运行完整校验"""
    _run(ctx, 'verify', model=model, algebra=algebra)


@cli.command('star-table')
@model_option
@click.pass_context
def star_table(ctx, model):
    """打印共享标架下的 Hodge 星表"""
    _run(ctx, 'star-table', model=model)


@cli.command()
@model_option
@click.option('--target', required=True, help='2-形式: 内联 JSON、@文件 或 zero')
@click.pass_context
def decompose(ctx, model, target):
    """把 2-形式分解为 χ、Λ²₀、Λ²± 三部分"""
    _run(ctx, 'decompose', model=model, target=target)


@cli.command()
@model_option
@click.option('--targets', required=True, help='目标列表: JSON 列表或 @文件')
@click.option('--mode', type=click.Choice(HERMITIAN_MODES), default=DEFAULT_HERMITIAN_MODE,
              show_default=True, help='Hermitian 求解模式')
@click.option('--workers', type=int, default=WORKERS, show_default=True, help='进程数')
@click.option('--save', is_flag=True, help='存档证书')
@results_dir_option
@click.pass_context
def batch(ctx, model, targets, mode, workers, save, results_dir):
    """批量实现多个目标"""
    _run(ctx, 'batch', model=model, target=targets, mode=mode, workers=workers, save=save,
         results_dir=results_dir)


@cli.command()
@results_dir_option
@click.pass_context
def history(ctx, results_dir):
    """显示已存档的证书"""
    _run(ctx, 'history', results_dir=results_dir)


@cli.command()
@model_option
@click.option('--target', help='证书对应的目标 2-形式')
@click.option('--id', 'result_id', help='证书 ID')
@results_dir_option
@click.pass_context
def read(ctx, model, target, result_id, results_dir):
    """阅读之前存档的证书"""
    _run(ctx, 'read', model=model, target=target, result_id=result_id, results_dir=results_dir)


if __name__ == '__main__':
    colorama_init()
    cli()
