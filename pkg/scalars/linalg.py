# 后端无关的小矩阵运算
"""
对象数组上的线性代数辅助函数。

numpy.linalg 只支持浮点类型，这里的消元和行列式只用到后端的
加减乘除，因此对三种后端通用。
"""
from functools import lru_cache
from itertools import permutations
from typing import Any, Iterable, List, Sequence, Tuple

import numpy as np
from sympy.combinatorics import Permutation

from scalars.backends import ScalarBackend
from utils.errors import ScalarError


def zeros(backend: ScalarBackend, *shape: int) -> np.ndarray:
    """全零对象数组"""
    array = np.empty(shape, dtype=object)
    array.fill(backend.zero)
    return array


def identity(backend: ScalarBackend, n: int = 4) -> np.ndarray:
    result = zeros(backend, n, n)
    for i in range(n):
        result[i, i] = backend.one
    return result


def from_rows(backend: ScalarBackend, rows: Sequence[Sequence[Any]]) -> np.ndarray:
    """由嵌套序列构造矩阵，元素经过 backend.coerce"""
    n_rows, n_cols = len(rows), len(rows[0])
    result = zeros(backend, n_rows, n_cols)
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise ValueError("矩阵各行长度不一致")
        for j, value in enumerate(row):
            result[i, j] = backend.coerce(value)
    return result


def convert(array: np.ndarray, backend: ScalarBackend) -> np.ndarray:
    """逐元素转换到另一个后端"""
    result = np.empty(array.shape, dtype=object)
    for index in np.ndindex(array.shape):
        result[index] = backend.coerce(array[index])
    return result


def conjugate(backend: ScalarBackend, array: np.ndarray) -> np.ndarray:
    result = np.empty(array.shape, dtype=object)
    for index in np.ndindex(array.shape):
        result[index] = backend.conjugate(array[index])
    return result


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, m = a.shape
    m2, p = b.shape
    if m != m2:
        raise ValueError("矩阵维数不匹配")
    result = np.empty((n, p), dtype=object)
    for i in range(n):
        for j in range(p):
            total = a[i, 0] * b[0, j]
            for k in range(1, m):
                total = total + a[i, k] * b[k, j]
            result[i, j] = total
    return result


def apply(matrix: np.ndarray, vector: Sequence[Any]) -> List[Any]:
    """矩阵作用于分量向量"""
    return [sum((matrix[i, k] * vector[k] for k in range(1, len(vector))), matrix[i, 0] * vector[0])
            for i in range(matrix.shape[0])]


def all_zero(backend: ScalarBackend, values: Iterable[Any]) -> bool:
    return all(backend.is_zero(v) for v in values)


def equal(backend: ScalarBackend, a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    return all(backend.is_zero(x - y) for x, y in zip(a.flat, b.flat))


def max_magnitude(backend: ScalarBackend, values: Iterable[Any]) -> float:
    return max((backend.magnitude(v) for v in values), default=0.0)


def inverse(backend: ScalarBackend, matrix: np.ndarray) -> np.ndarray:
    """
    Gauss-Jordan 消元求逆

    Args:
        backend: 系数所在后端
        matrix: 方阵

    Returns:
        逆矩阵

    Raises:
        ScalarError: 矩阵不可逆
    """
    n = matrix.shape[0]
    work = np.empty((n, 2 * n), dtype=object)
    work[:, :n] = matrix
    work[:, n:] = identity(backend, n)

    for col in range(n):
        pivot = _pick_pivot(backend, work, col)
        if pivot is None:
            raise ScalarError("non-invertible scalar")
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
        pivot_inverse = backend.div(backend.one, work[col, col])
        for j in range(2 * n):
            work[col, j] = work[col, j] * pivot_inverse
        for row in range(n):
            if row == col or backend.is_zero(work[row, col]):
                continue
            factor = work[row, col]
            for j in range(2 * n):
                work[row, j] = work[row, j] - factor * work[col, j]
    return work[:, n:].copy()


def _pick_pivot(backend: ScalarBackend, work: np.ndarray, col: int):
    n = work.shape[0]
    candidates = [row for row in range(col, n) if not backend.is_zero(work[row, col])]
    if not candidates:
        return None
    if backend.exact:
        return candidates[0]
    return max(candidates, key=lambda row: backend.magnitude(work[row, col]))


def rank(backend: ScalarBackend, matrix: np.ndarray) -> int:
    """行阶梯消元求秩"""
    work = matrix.copy()
    n_rows, n_cols = work.shape
    current = 0
    for col in range(n_cols):
        if current == n_rows:
            break
        pivot = None
        for row in range(current, n_rows):
            if not backend.is_zero(work[row, col]):
                pivot = row
                break
        if pivot is None:
            continue
        work[[current, pivot]] = work[[pivot, current]]
        for row in range(current + 1, n_rows):
            if backend.is_zero(work[row, col]):
                continue
            factor = backend.div(work[row, col], work[current, col])
            for j in range(n_cols):
                work[row, j] = work[row, j] - factor * work[current, j]
        current += 1
    return current


@lru_cache(maxsize=None)
def signed_permutations(k: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """k 元置换及其符号"""
    result = []
    for perm in permutations(range(k)):
        sign = -1 if Permutation(list(perm)).parity() else 1
        result.append((perm, sign))
    return tuple(result)


def minor_det(backend: ScalarBackend, matrix: np.ndarray,
              rows: Sequence[int], cols: Sequence[int]) -> Any:
    """Leibniz 公式计算子式 det(matrix[rows, cols])"""
    k = len(rows)
    if k == 0:
        return backend.one
    total = backend.zero
    for perm, sign in signed_permutations(k):
        term = matrix[rows[0], cols[perm[0]]]
        for r in range(1, k):
            term = term * matrix[rows[r], cols[perm[r]]]
        total = total + term if sign > 0 else total - term
    return total


def det(backend: ScalarBackend, matrix: np.ndarray) -> Any:
    n = matrix.shape[0]
    return minor_det(backend, matrix, range(n), range(n))


def scale(matrix: np.ndarray, factor: Any) -> np.ndarray:
    """逐元素乘以标量（不依赖 numpy 对标量类型的广播推断）"""
    result = np.empty(matrix.shape, dtype=object)
    for index in np.ndindex(matrix.shape):
        result[index] = factor * matrix[index]
    return result
