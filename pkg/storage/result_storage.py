# 实现证书的存档与检索
"""
证书存储管理模块，处理实现结果（RealizationResult JSON）的保存与检索。
索引文件以 (模型, 目标) 的指纹为键。
"""
import hashlib
import json
import logging
import time
import uuid
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, TypedDict

from config.config import RESULTS_DIR

logger = logging.getLogger(__name__)


class ResultMetadata(TypedDict):
    """证书元数据类型定义"""
    id: str
    key: str
    model: str
    mode: str
    passed: bool
    timestamp: str
    timestamp_unix: float
    preview: str


def result_key(model: str, target: Dict[str, Any]) -> str:
    """
    (模型, 目标) 的指纹

    Args:
        model: 模型名称
        target: 目标形式的 JSON

    Returns:
        形如 "para:{...}" 的规范字符串
    """
    return f"{model}:{json.dumps(target, sort_keys=True, ensure_ascii=False, separators=(',', ':'))}"


class ResultStorage:
    """
    证书存储管理类，负责实现结果的保存和检索
    """

    def __init__(self, storage_dir: Optional[str] = None):
        """
        初始化证书存储管理器

        Args:
            storage_dir: 存储目录路径，为 None 时使用配置中的默认路径
        """
        self.storage_dir = Path(storage_dir or RESULTS_DIR)
        self.storage_dir.mkdir(parents=True, exist_ok=True)

        self.index_file = self.storage_dir / "result_index.json"
        self._init_index_file()

    def _init_index_file(self):
        if not self.index_file.exists():
            with open(self.index_file, 'w', encoding='utf-8') as f:
                json.dump({}, f)

    def _load_index(self) -> Dict[str, ResultMetadata]:
        """
        加载证书索引

        Returns:
            索引字典，键为指纹，值为元数据
        """
        try:
            with open(self.index_file, 'r', encoding='utf-8') as f:
                return json.load(f)
        except (json.JSONDecodeError, FileNotFoundError):
            logger.warning("证书索引不可读，按空索引处理: %s", self.index_file)
            return {}

    def _save_index(self, index: Dict[str, ResultMetadata]):
        with open(self.index_file, 'w', encoding='utf-8') as f:
            json.dump(index, f, ensure_ascii=False, indent=2)

    def _get_result_path(self, result_id: str) -> Path:
        return self.storage_dir / f"{result_id}.json"

    @staticmethod
    def _key_to_id(key: str) -> str:
        """指纹 MD5 的前 8 位，加上时间戳和随机后缀"""
        key_hash = hashlib.md5(key.encode()).hexdigest()[:8]
        return f"{key_hash}-{int(time.time())}-{uuid.uuid4().hex[:4]}"

    def save_result(self, data: Dict[str, Any]) -> str:
        """
        保存实现结果

        Args:
            data: result_to_json 的输出

        Returns:
            证书 ID
        """
        key = result_key(data["model"], data["requested"])
        index = self._load_index()

        existing = index.get(key)
        result_id = existing['id'] if existing else self._key_to_id(key)

        with open(self._get_result_path(result_id), 'w', encoding='utf-8') as f:
            json.dump(data, f, ensure_ascii=False, indent=2)

        index[key] = {
            'id': result_id,
            'key': key,
            'model': data["model"],
            'mode': data["mode"],
            'passed': bool(data.get("pass", False)),
            'timestamp': datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            'timestamp_unix': time.time(),
            'preview': json.dumps(data["requested"].get("coeffs", {}), ensure_ascii=False)[:200],
        }
        self._save_index(index)
        logger.info("已保存证书 %s", result_id)
        return result_id

    def _read(self, metadata: ResultMetadata) -> Optional[Dict[str, Any]]:
        path = self._get_result_path(metadata['id'])
        if not path.exists():
            return None
        with open(path, 'r', encoding='utf-8') as f:
            content = json.load(f)
        return {**metadata, 'content': content}

    def get_result_by_key(self, model: str, target: Dict[str, Any]) -> Optional[Dict[str, Any]]:
        """
        根据 (模型, 目标) 获取证书

        Returns:
            元数据加 'content' 字段；未找到时返回 None
        """
        metadata = self._load_index().get(result_key(model, target))
        return self._read(metadata) if metadata else None

    def get_result_by_id(self, result_id: str) -> Optional[Dict[str, Any]]:
        for metadata in self._load_index().values():
            if metadata['id'] == result_id:
                return self._read(metadata)
        return None

    def list_results(self, limit: int = 100, sort_by: str = 'timestamp_unix',
                     reverse: bool = True) -> List[ResultMetadata]:
        """
        列出已保存的证书

        Args:
            limit: 最大数量
            sort_by: 排序字段，支持 'timestamp_unix'、'model'
            reverse: 是否逆序

        Returns:
            元数据列表
        """
        results = list(self._load_index().values())
        if sort_by in ('timestamp_unix', 'model'):
            results.sort(key=lambda x: x[sort_by], reverse=reverse)
        return results[:limit]

    def delete_result(self, key_or_id: str) -> bool:
        """
        删除证书

        Args:
            key_or_id: 指纹或证书 ID

        Returns:
            是否删除成功
        """
        index = self._load_index()
        key = key_or_id if key_or_id in index else next(
            (k for k, m in index.items() if m['id'] == key_or_id), None)
        if key is None:
            return False

        path = self._get_result_path(index[key]['id'])
        if path.exists():
            path.unlink()
        del index[key]
        self._save_index(index)
        return True
