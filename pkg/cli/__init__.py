# 包初始化文件
"""
命令行包初始化文件。
"""
from .commands import (
    COMMANDS,
    EXIT_DOMAIN,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_VERIFY,
    cmd_batch,
    cmd_decompose,
    cmd_history,
    cmd_read,
    cmd_realize,
    cmd_star_table,
    cmd_verify,
    dispatch,
    run_command,
)

__all__ = [
    'COMMANDS',
    'EXIT_DOMAIN',
    'EXIT_INPUT',
    'EXIT_OK',
    'EXIT_VERIFY',
    'cmd_batch',
    'cmd_decompose',
    'cmd_history',
    'cmd_read',
    'cmd_realize',
    'cmd_star_table',
    'cmd_verify',
    'dispatch',
    'run_command',
]
