"""
实现流水线。

负责把目标形式交给对应的求解器、附加校验、按需存档，并支持
在进程池中批量处理互相独立的目标。
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from config.config import DEFAULT_HERMITIAN_MODE, DEFAULT_TOLERANCE, FLOAT_ATOL, WORKERS
from exterior import KForm
from models.model_space import ModelKind, build_model
from realization.solvers import RealizationResult, RoundTrip, solve, verify_roundtrip
from scalars import get_backend
from storage.result_storage import ResultStorage
from utils import json_codec

logger = logging.getLogger(__name__)


def _realize_payload(payload: Tuple[str, Any, str, str, bool, float]) -> Dict[str, Any]:
    """进程池中的单个任务；输入输出都是 JSON 数据"""
    kind, raw_target, backend_name, mode, allow_float, tolerance = payload
    backend = get_backend(backend_name, FLOAT_ATOL if backend_name == "float" else None)
    model = build_model(kind, backend)
    target = json_codec.form_from_json(backend, raw_target, model=model)
    result = solve(kind, target, mode=mode, allow_float=allow_float, tolerance=tolerance)
    roundtrip = verify_roundtrip(result, tolerance)
    data = json_codec.result_to_json(result)
    data["roundtrip"] = {"ok": roundtrip.ok, "residual": roundtrip.residual}
    return data


class RealizationPipeline:
    """实现流水线，协调求解、复核与存档"""

    def __init__(self, storage: Optional[ResultStorage] = None,
                 tolerance: float = DEFAULT_TOLERANCE, mode: str = DEFAULT_HERMITIAN_MODE):
        """
        初始化流水线

        Args:
            storage: 证书存储，为 None 时在首次存档时创建
            tolerance: 浮点容差
            mode: Hermitian 求解模式
        """
        self._storage = storage
        self.tolerance = tolerance
        self.mode = mode

    @property
    def storage(self) -> ResultStorage:
        if self._storage is None:
            self._storage = ResultStorage()
        return self._storage

    def realize(self, kind, target: KForm, allow_float: bool = True,
                save: bool = False) -> Tuple[RealizationResult, RoundTrip]:
        """
        实现单个目标

        Args:
            kind: 模型类型
            target: 目标 2-形式
            allow_float: 需要无理数时是否退回浮点
            save: 是否存档证书

        Returns:
            (实现结果, 独立复核结果)
        """
        kind = ModelKind(kind)
        # 1. 求解并附加校验报告
        result = solve(kind, target, mode=self.mode, allow_float=allow_float, tolerance=self.tolerance)

        # 2. 独立复核
        roundtrip = verify_roundtrip(result, self.tolerance)
        logger.info("复核%s，残差 %.3e", "通过" if roundtrip.ok else "失败", roundtrip.residual)

        # 3. 存档
        if save:
            data = json_codec.result_to_json(result)
            data["roundtrip"] = {"ok": roundtrip.ok, "residual": roundtrip.residual}
            self.storage.save_result(data)
        return result, roundtrip

    def realize_batch(self, kind, targets: Sequence[Any], backend_name: str = "exact",
                      allow_float: bool = True, workers: int = WORKERS) -> List[Dict[str, Any]]:
        """
        批量实现互相独立的目标

        Args:
            kind: 模型类型
            targets: 目标形式的 JSON 数据列表
            backend_name: "exact" 或 "float"
            allow_float: 需要无理数时是否退回浮点
            workers: 进程数，1 表示顺序执行

        Returns:
            按输入顺序排列的结果 JSON；失败的任务为 {"error": 信息}
        """
        kind = ModelKind(kind).value
        payloads = [(kind, raw, backend_name, self.mode, allow_float, self.tolerance) for raw in targets]
        results: List[Dict[str, Any]] = []

        if workers <= 1 or len(payloads) <= 1:
            for payload in tqdm(payloads, desc="realize", unit="target"):
                results.append(self._guarded(_realize_payload, payload))
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = [executor.submit(_realize_payload, payload) for payload in payloads]
                for future in tqdm(futures, desc="realize", unit="target"):
                    try:
                        results.append(future.result())
                    except (ValueError, ArithmeticError, RuntimeError) as exc:
                        logger.error("批处理任务失败: %s", exc)
                        results.append({"error": str(exc), "error_type": type(exc).__name__})

        passed = sum(1 for r in results if r.get("roundtrip", {}).get("ok"))
        logger.info("批处理完成: %d/%d 通过", passed, len(results))
        return results

    @staticmethod
    def _guarded(fn, payload) -> Dict[str, Any]:
        try:
            return fn(payload)
        except (ValueError, ArithmeticError, RuntimeError) as exc:
            logger.error("批处理任务失败: %s", exc)
            return {"error": str(exc), "error_type": type(exc).__name__}


def create_pipeline(storage: Optional[ResultStorage] = None, tolerance: float = DEFAULT_TOLERANCE,
                    mode: str = DEFAULT_HERMITIAN_MODE) -> RealizationPipeline:
    """
    创建实现流水线

    Returns:
        配置好的 RealizationPipeline 实例
    """
    return RealizationPipeline(storage=storage, tolerance=tolerance, mode=mode)
