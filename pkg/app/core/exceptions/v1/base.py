"""
Базовый класс для обработки исключений движка.

Включает в себя:
- Логирование ошибок.
- Формирование контекста ошибки.
- Генерация уникального идентификатора для ошибки.
- Преобразование даты и времени в формат ISO 8601 с учетом часового пояса.
"""

import logging
import uuid
from datetime import datetime
from typing import Optional

import pytz

logger = logging.getLogger(__name__)
utc_tz = pytz.UTC


class BaseEngineException(Exception):
    """
    Базовый класс для исключений движка.

    Attributes:
        detail: Сообщение об ошибке.
        error_type: Тип ошибки.
        exit_code: Код завершения командной строки.
        log_level: Уровень записи в лог; DEBUG для ожидаемых ошибок.
        extra: Дополнительные данные для контекста.
        context: Контекст, записанный в лог.
    """

    exit_code: int = 1
    log_level: int = logging.DEBUG

    def __init__(
        self,
        detail: str,
        error_type: str,
        extra: Optional[dict] = None,
        exit_code: Optional[int] = None,
    ) -> None:
        if exit_code is not None:
            self.exit_code = exit_code

        self.detail = detail
        self.error_type = error_type
        self.extra = extra or {}
        self.context = {
            "timestamp": datetime.now(utc_tz).isoformat(),
            "error_id": str(uuid.uuid4()),
            "exit_code": self.exit_code,
            "error_type": error_type,
            **self.extra,
        }

        logger.log(self.log_level, detail, extra=self.context)
        super().__init__(detail)

    def to_dict(self) -> dict:
        """
        Представление ошибки для документа результата.

        Returns:
            Словарь без метки времени и идентификатора, чтобы документы
            оставались побайтно воспроизводимыми.
        """
        return {
            "error_type": self.error_type,
            "detail": self.detail,
            "extra": {key: str(value) for key, value in sorted(self.extra.items())},
        }


class WindowExhaustedError(BaseEngineException):
    """
    Окно исчерпано без хвостового правила: ответ "unknown-within-window".

    Attributes:
        operation (str): Операция, которой не хватило окна.
        window (int): Размер окна.
    """

    def __init__(self, operation: str, window: int, extra: Optional[dict] = None):
        super().__init__(
            detail=f"Окно {window} исчерпано в операции {operation}: "
            "unknown-within-window",
            error_type="unknown_within_window",
            extra={"operation": operation, "window": window, **(extra or {})},
            exit_code=2,
        )
