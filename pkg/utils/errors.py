# 异常定义，统一项目中的错误类型
"""
异常定义模块。

命令行按异常类型映射退出码：InputError -> 2，DomainError -> 3，
校验失败 -> 4。异常消息使用固定的英文短语，便于测试与脚本匹配。
"""


class ScalarError(ArithmeticError):
    """标量运算错误：不可逆元素、未绑定的未定元、负的被开方数"""


class DomainError(ValueError):
    """输入不满足运算的定义域前提"""


class RealityViolation(DomainError):
    """复数据不满足实性（共轭）条件"""

    def __init__(self, detail: str = ""):
        message = "reality violation"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class InputError(ValueError):
    """JSON或命令行参数格式错误"""


class InvariantError(RuntimeError):
    """内部证书校验失败，表示实现本身存在问题"""
