"""
Модуль схем документа результатов.

Включает в себя:
- TaskStatus: итог выполнения задачи
- TaskResultSchema: результат одной задачи с вердиктом и областью
- ResultDocSchema: документ результатов в порядке задач
"""

from enum import Enum
from typing import List, Optional

from pydantic import Field

from app.schemas.v1.base import BaseResultSchema
from app.schemas.v1.chart import ChartSchema
from app.schemas.v1.verdicts import Scope


class TaskStatus(str, Enum):
    """
    Итог выполнения задачи

    Attributes:
        OK (str): Вердикт решен
        UNKNOWN (str): Окно исчерпано, вердикт "unknown"
        FAILED (str): Задача завершилась ошибкой
    """

    OK = "ok"
    UNKNOWN = "unknown"
    FAILED = "failed"


class TaskResultSchema(BaseResultSchema):
    """
    Результат задачи

    Attributes:
        index (int): Номер задачи в документе
        op (str): Операция
        status (TaskStatus): Итог
        verdict (Optional[str]): Вердикт операции
        scope (Optional[Scope]): Чем закрыт вердикт
        result (dict): Группы, сертификаты и отчеты
        charts (List[ChartSchema]): Диаграммы страниц
        error (Optional[dict]): Ошибка с контекстом операции
    """

    index: int
    op: str
    status: TaskStatus
    verdict: Optional[str] = None
    scope: Optional[Scope] = None
    result: dict = Field(default_factory=dict)
    charts: List[ChartSchema] = Field(default_factory=list)
    error: Optional[dict] = None


class ResultDocSchema(BaseResultSchema):
    """
    Документ результатов

    Attributes:
        engine (str): Название движка
        version (str): Версия
        tasks (List[TaskResultSchema]): Результаты по порядку задач
    """

    engine: str
    version: str
    tasks: List[TaskResultSchema] = Field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(task.status == TaskStatus.FAILED for task in self.tasks)

    @property
    def unknown(self) -> bool:
        return any(task.status == TaskStatus.UNKNOWN for task in self.tasks)
