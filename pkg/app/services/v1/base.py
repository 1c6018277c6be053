import logging
from typing import Optional

from app.core.config import config
from app.schemas.v1.verdicts import Scope, Verdict


class BaseService:
    """
    Базовый класс для сервисов движка.
    """

    def __init__(self):
        self.logger = logging.getLogger(self.__class__.__name__)


class WindowedService(BaseService):
    """
    Базовый класс для поисков, ограниченных окном.

    Attributes:
        window (int): Реализованное окно башен.
        search_depth (int): Запас уровней за началом хвоста.
    """

    def __init__(
        self, window: Optional[int] = None, search_depth: Optional[int] = None
    ):
        super().__init__()
        self.window = config.window if window is None else window
        self.search_depth = (
            config.search_depth if search_depth is None else search_depth
        )

    def log_verdict(self, operation: str, verdict: Verdict, scope: Scope) -> None:
        """
        Записывает итог поиска в лог.

        Args:
            operation: Название операции
            verdict: Вердикт
            scope: Чем закрыт вердикт
        """
        if verdict == Verdict.CERTIFIED:
            self.logger.info("✅ %s: %s (%s)", operation, verdict.value, scope.value)
        elif verdict == Verdict.REFUTED:
            self.logger.info("❌ %s: %s (%s)", operation, verdict.value, scope.value)
        else:
            self.logger.info(
                "❓ %s: окно %s исчерпано (%s)", operation, self.window, scope.value
            )
