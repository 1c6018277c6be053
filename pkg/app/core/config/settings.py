"""
Модуль настроек из переменных окружения.

Обеспечивает:
- Загрузку конфигурации из .env файла и переменных с префиксом PROSPEC_
- Размеры окон башен и глубину переборов
- Параметры встроенных примеров (контрпример, формальный KU)
- Уровень логирования командной строки
"""

import logging
from typing import List

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .app import AppConfig

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """
    Конфигурация параметров вычислений из переменных окружения.

    Attributes:
        window (int): Реализованное окно башен W
        search_depth (int): Сколько уровней поиск может заглянуть за начало хвоста
        shift_search (int): Наибольший кофинальный сдвиг c в поиске эквивалентностей
        n_range (List[int]): Отрезок степеней n для проверки слабой эквивалентности
        counterexample_width (int): Число дополнительных сфер на уровне контрпримера
        ku_window (int): Окно усечения формального KU
        p_range (List[int]): Окно по p спектральной последовательности
        q_range (List[int]): Окно по q спектральной последовательности
        pages (int): Последняя вычисляемая страница
        postnikov_offset (int): Смещение диагонали в постниковской замене
        log_level (str): Уровень логирования
        log_to_file (bool): Писать ли ротируемый файл логов

    Properties:
        n_bounds: Отрезок n как пара
        p_bounds: Окно p как пара
        q_bounds: Окно q как пара

    Example:
        >>> from app.core.config import config
        >>> config.window
        12
        >>> config.q_bounds
        (-12, 12)
    """

    window: int = Field(default=12, ge=1, description="Реализованное окно башен")

    search_depth: int = Field(
        default=6, ge=0, description="Запас уровней за началом хвоста при поиске"
    )

    shift_search: int = Field(
        default=8, ge=0, description="Наибольший кофинальный сдвиг уровней"
    )

    n_range: List[int] = Field(
        default=[-4, 8], description="Степени n для проверки слабой эквивалентности"
    )

    counterexample_width: int = Field(
        default=4, ge=0, description="Число дополнительных сфер на уровне контрпримера"
    )

    ku_window: int = Field(default=12, ge=0, description="Окно усечения KU")

    p_range: List[int] = Field(
        default=[-12, 12], description="Окно по p спектральной последовательности"
    )

    q_range: List[int] = Field(
        default=[-12, 12], description="Окно по q спектральной последовательности"
    )

    pages: int = Field(default=4, ge=2, description="Последняя страница")

    postnikov_offset: int = Field(
        default=0, description="Смещение диагонали постниковской замены"
    )

    log_level: str = Field(default="WARNING", description="Уровень логирования")

    log_to_file: bool = Field(default=False, description="Писать файл логов")

    @property
    def n_bounds(self) -> tuple[int, int]:
        """
        Отрезок степеней n.

        Returns:
            Пара (нижняя, верхняя) граница включительно
        """
        return self.n_range[0], self.n_range[1]

    @property
    def p_bounds(self) -> tuple[int, int]:
        return self.p_range[0], self.p_range[1]

    @property
    def q_bounds(self) -> tuple[int, int]:
        return self.q_range[0], self.q_range[1]

    model_config = SettingsConfigDict(
        env_file=AppConfig.PATHS.ENV_PATH,
        env_file_encoding="utf-8",
        env_prefix="PROSPEC_",
        env_nested_delimiter="__",
        extra="allow",
    )
