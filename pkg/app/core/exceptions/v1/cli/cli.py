import logging
from typing import List, Optional

from app.core.exceptions.v1.base import BaseEngineException


class InstanceParseError(BaseEngineException):
    """
    Документ экземпляра не прошел разбор или проверку.

    Attributes:
        errors (List[dict]): Ошибки с позициями {line, column, message}.
    """

    def __init__(self, errors: List[dict]):
        first = errors[0] if errors else {"line": 0, "column": 0, "message": ""}
        super().__init__(
            detail=f"Ошибка разбора в строке {first['line']}, "
            f"столбце {first['column']}: {first['message']}",
            error_type="instance_parse_error",
            extra={"count": len(errors)},
        )
        self.errors = errors


class TaskError(BaseEngineException):
    """
    Ошибка выполнения задачи с контекстом операции.
    """

    def __init__(self, operation: str, message: str, extra: Optional[dict] = None):
        super().__init__(
            detail=f"Задача {operation}: {message}",
            error_type="task_error",
            extra={"operation": operation, **(extra or {})},
        )


class InvariantViolationError(BaseEngineException):
    """
    Нарушен внутренний инвариант: расхождение двух независимых вычислений.
    """

    log_level = logging.ERROR

    def __init__(self, what: str, extra: Optional[dict] = None):
        super().__init__(
            detail=f"Нарушение инварианта: {what}",
            error_type="invariant_violation",
            extra=extra,
            exit_code=3,
        )


class UsageError(BaseEngineException):
    """
    Неверный вызов командной строки.
    """

    def __init__(self, message: str):
        super().__init__(
            detail=f"Ошибка вызова: {message}",
            error_type="usage_error",
        )
