"""
Модуль схем диаграмм страниц спектральной последовательности.

Включает в себя:
- ChartFormat: формат вывода
- ChartEntrySchema: подпись клетки (p, q)
- ChartArrowSchema: стрелка дифференциала
- ChartSchema: страница целиком с баннером сходимости
"""

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import Field

from app.schemas.v1.base import BaseResultSchema


class ChartFormat(str, Enum):
    """
    Формат диаграммы

    Attributes:
        TEXT (str): Текстовая сетка
        SVG (str): Векторная графика
    """

    TEXT = "text"
    SVG = "svg"


class ChartEntrySchema(BaseResultSchema):
    """
    Клетка диаграммы

    Attributes:
        p (int): Фильтрация
        q (int): Дополнительная степень
        label (str): Запись группы, "?" для неопределенной клетки
        rank (int): Ранг
        torsion (List[int]): Порядки кручения
        indeterminate (bool): Группа не определена в окне
    """

    p: int
    q: int
    label: str
    rank: int = 0
    torsion: List[int] = Field(default_factory=list)
    indeterminate: bool = False


class ChartArrowSchema(BaseResultSchema):
    """
    Ненулевой дифференциал

    Attributes:
        source (Tuple[int, int]): Позиция источника
        target (Tuple[int, int]): Позиция цели
        matrix (List[List[int]]): Матрица d_r на образующих
    """

    source: Tuple[int, int]
    target: Tuple[int, int]
    matrix: List[List[int]]


class ChartSchema(BaseResultSchema):
    """
    Диаграмма страницы E_r

    Attributes:
        r (int): Номер страницы
        degree (Tuple[int, int]): Бистепень d_r
        p_range (Tuple[int, int]): Окно по p
        q_range (Tuple[int, int]): Окно по q
        entries (List[ChartEntrySchema]): Ненулевые и неопределенные клетки
        arrows (List[ChartArrowSchema]): Ненулевые дифференциалы
        banner (Optional[str]): Итог проверки сходимости
    """

    r: int
    degree: Tuple[int, int]
    p_range: Tuple[int, int]
    q_range: Tuple[int, int]
    entries: List[ChartEntrySchema] = Field(default_factory=list)
    arrows: List[ChartArrowSchema] = Field(default_factory=list)
    banner: Optional[str] = None
