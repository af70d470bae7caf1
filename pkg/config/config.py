# 配置管理模块，负责加载环境变量和配置
"""
配置管理模块，负责加载环境变量、日志设置与单次命令的运行配置。
"""
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from utils.errors import InputError

# 确定项目根目录
ROOT_DIR = Path(__file__).parent.parent

# 加载.env文件中的环境变量
load_dotenv(ROOT_DIR / '.env')

BACKENDS = ("exact", "float")
MODELS = ("hermitian", "para")
HERMITIAN_MODES = ("exact_align", "orbit")
FORMATS = ("table", "json")

# 数值配置
DEFAULT_BACKEND = os.getenv('KW4_BACKEND', 'exact').lower()
DEFAULT_TOLERANCE = float(os.getenv('KW4_TOLERANCE', '1e-9'))
FLOAT_ATOL = float(os.getenv('KW4_FLOAT_ATOL', '1e-10'))
DEFAULT_HERMITIAN_MODE = os.getenv('KW4_HERMITIAN_MODE', 'exact_align')

if DEFAULT_BACKEND not in BACKENDS:
    raise ValueError(f"KW4_BACKEND 只能是 {'/'.join(BACKENDS)}，当前为 {DEFAULT_BACKEND!r}")
if DEFAULT_TOLERANCE <= 0:
    raise ValueError("KW4_TOLERANCE 必须为正数")
if DEFAULT_HERMITIAN_MODE not in HERMITIAN_MODES:
    raise ValueError(f"KW4_HERMITIAN_MODE 只能是 {'/'.join(HERMITIAN_MODES)}")

# 存储配置
RESULTS_DIR = os.getenv('KW4_RESULTS_DIR', str(ROOT_DIR / 'data' / 'certificates'))

# 批处理配置
WORKERS = int(os.getenv('KW4_WORKERS', str(os.cpu_count() or 1)))

# 系统配置
DEBUG = os.getenv('DEBUG', 'False').lower() in ('true', '1', 't')
LOG_LEVEL = os.getenv('LOG_LEVEL', 'DEBUG' if DEBUG else 'WARNING').upper()

logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.WARNING),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
)


@dataclass
class RunConfig:
    """
    单次命令调用的配置

    Attributes:
        subcommand: 子命令名称
        model: "hermitian" 或 "para"
        target: 目标形式参数（内联 JSON、@文件或 zero）
        algebra: 李代数参数
        backend: "exact" 或 "float"
        tolerance: 浮点容差
        mode: Hermitian 求解模式
        out: 输出文件路径
        format: "table" 或 "json"
        save: 是否存档证书
        workers: 批处理进程数
        result_id: 要读取的证书 ID
        results_dir: 证书目录，为 None 时使用 KW4_RESULTS_DIR
        debug: 出错时是否打印堆栈
    """

    subcommand: str
    model: Optional[str] = None
    target: Optional[str] = None
    algebra: Optional[str] = None
    backend: str = DEFAULT_BACKEND
    tolerance: float = DEFAULT_TOLERANCE
    mode: str = DEFAULT_HERMITIAN_MODE
    out: Optional[str] = None
    format: str = "table"
    save: bool = False
    workers: int = WORKERS
    result_id: Optional[str] = None
    results_dir: Optional[str] = None
    debug: bool = DEBUG

    def validate(self) -> "RunConfig":
        """
        校验取值范围

        Raises:
            InputError: 取值无效
        """
        if self.tolerance <= 0:
            raise InputError("tolerance 必须为正数")
        if self.backend not in BACKENDS:
            raise InputError(f"未知的数值后端: {self.backend}")
        if self.model is not None and self.model not in MODELS:
            raise InputError(f"未知的模型: {self.model}")
        if self.mode not in HERMITIAN_MODES:
            raise InputError(f"未知的 Hermitian 模式: {self.mode}")
        if self.format not in FORMATS:
            raise InputError(f"未知的输出格式: {self.format}")
        if self.workers < 1:
            raise InputError("workers 至少为 1")
        return self
