"""
Модуль схем документа экземпляра.

Включает в себя:
- GroupSchema: группа по рангу и порядкам кручения
- SpectrumSchema: формальный спектр по рангам и матрицам дифференциалов
- TailSchema: хвостовое правило башни или морфизма
- TowerSchema: явная или встроенная башня
- MapSchema: морфизм башен в поуровневой форме
- TaskSchema: запрос одной операции
- InstanceDocSchema: документ целиком
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from pydantic import Field, field_validator, model_validator

from app.schemas.v1.base import BaseInputSchema
from app.schemas.v1.verdicts import TailKind

Matrix = List[List[int]]
LevelMatrix = Union[Matrix, Dict[int, Matrix]]


class BuiltinTower(str, Enum):
    """
    Встроенные генераторы башен

    Attributes:
        COUNTEREXAMPLE (str): Башня ⋁_{k≥s} S^{2k} с периодическим хвостом
        KU (str): Постниковская башня формального KU
        CPN (str): Постоянная башня CP^n
        CONSTANT (str): Постоянная башня на заданном спектре или группе
        ZERO (str): Нулевая башня
    """

    COUNTEREXAMPLE = "counterexample"
    KU = "ku"
    CPN = "cpn"
    CONSTANT = "constant"
    ZERO = "zero"


class BuiltinMap(str, Enum):
    """
    Встроенные морфизмы

    Attributes:
        ZERO (str): Единственный морфизм из нулевой башни в target
        IDENTITY (str): Тождественный морфизм target
    """

    ZERO = "zero"
    IDENTITY = "identity"


class TaskName(str, Enum):
    """
    Операции, доступные в документе

    Attributes:
        HOMOLOGY (str): Гомологии спектра
        LIM (str): lim и lim¹ башни групп или про-группы гомотопий
        PROISO (str): Проверка про-изоморфизма
        WEQ (str): Проверка π*-слабой эквивалентности
        LES (str): Длинная точная последовательность конуса
        PROMAPS (str): [X, Y]^r_pro с препятствием lim¹
        COHOMOLOGY (str): H^r(X; A)
        NAIVE (str): Наивный копредел когомологий клиньев сфер
        BOUNDED (str): Существенная ограниченность сверху
        CONVERGENCE (str): Условия условной сходимости
        ABUTMENT (str): Сверка предельного члена с [X, Y]_pro
        WHITEHEAD (str): Теорема Уайтхеда для когомологий
        AHSS (str): Страницы спектральной последовательности
    """

    HOMOLOGY = "homology"
    LIM = "lim"
    PROISO = "proiso"
    WEQ = "weq"
    LES = "les"
    PROMAPS = "promaps"
    COHOMOLOGY = "cohomology"
    NAIVE = "naive"
    BOUNDED = "bounded"
    CONVERGENCE = "convergence"
    ABUTMENT = "abutment"
    WHITEHEAD = "whitehead"
    AHSS = "ahss"


class GroupSchema(BaseInputSchema):
    """
    Группа Z^rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k

    Attributes:
        rank (int): Ранг свободной части
        torsion (List[int]): Порядки циклических слагаемых, каждый ≥ 2
    """

    rank: int = Field(0, ge=0)
    torsion: List[int] = Field(default_factory=list)

    @field_validator("torsion")
    @classmethod
    def check_torsion(cls, value: List[int]) -> List[int]:
        if any(t < 2 for t in value):
            raise ValueError("порядок кручения должен быть не меньше 2")
        return value


class SpectrumSchema(BaseInputSchema):
    """
    Формальный спектр

    Матрица d_k записывается построчно и имеет размер
    rank(k-1) × rank(k); пропущенные дифференциалы нулевые.

    Attributes:
        degrees (Dict[int, int]): Степень → ранг
        diff (Dict[int, Matrix]): Степень k → матрица d_k
    """

    degrees: Dict[int, int] = Field(default_factory=dict)
    diff: Dict[int, Matrix] = Field(default_factory=dict)

    @field_validator("degrees")
    @classmethod
    def check_ranks(cls, value: Dict[int, int]) -> Dict[int, int]:
        if any(rank < 0 for rank in value.values()):
            raise ValueError("ранг не может быть отрицательным")
        return value


class TailSchema(BaseInputSchema):
    """
    Хвостовое правило

    Attributes:
        kind (TailKind): Вид правила
        start (int): Уровень начала
        period (int): Период для periodic-shift
        shift (int): Сдвиг за период
    """

    kind: TailKind
    start: int = Field(0, ge=0)
    period: int = Field(1, ge=1)
    shift: int = 0


class TowerSchema(BaseInputSchema):
    """
    Башня: встроенная или по явным уровням 0..W и связкам 0..W-1

    Связка s действует из уровня s+1 в уровень s. Для башни групп это
    одна матрица, для башни спектров это словарь степень → матрица.

    Attributes:
        builtin (Optional[BuiltinTower]): Встроенный генератор
        n (Optional[int]): Размерность для cpn
        width (Optional[int]): Число дополнительных сфер для counterexample
        window (Optional[int]): Окно встроенной башни
        of (Optional[str]): Спектр или группа для constant
        levels (List[str]): Имена уровней
        bonds (List[LevelMatrix]): Связки
        tail (Optional[TailSchema]): Хвостовое правило
    """

    builtin: Optional[BuiltinTower] = None
    n: Optional[int] = Field(None, ge=0)
    width: Optional[int] = Field(None, ge=1)
    window: Optional[int] = Field(None, ge=0)
    of: Optional[str] = None
    levels: List[str] = Field(default_factory=list)
    bonds: List[LevelMatrix] = Field(default_factory=list)
    tail: Optional[TailSchema] = None

    @model_validator(mode="after")
    def check_shape(self) -> "TowerSchema":
        if self.builtin is None:
            if not self.levels:
                raise ValueError("нужны levels или builtin")
            if len(self.bonds) != len(self.levels) - 1:
                raise ValueError("число связок должно быть на единицу меньше уровней")
        elif self.levels or self.bonds:
            raise ValueError("builtin не сочетается с levels и bonds")
        if self.builtin == BuiltinTower.CPN and self.n is None:
            raise ValueError("для cpn нужен n")
        if self.builtin == BuiltinTower.CONSTANT and self.of is None:
            raise ValueError("для constant нужен of")
        return self


class MapSchema(BaseInputSchema):
    """
    Морфизм башен

    Компонента s действует из source.level(θ(s)) в target.level(s),
    θ задается таблицей reindex (пустая таблица означает тождество).

    Attributes:
        builtin (Optional[BuiltinMap]): Встроенный морфизм
        source (Optional[str]): Башня-источник
        target (str): Башня-цель
        reindex (List[int]): Значения θ(0), θ(1), ...
        components (List[LevelMatrix]): Компоненты на уровнях окна
        tail (Optional[TailSchema]): Правило для компонент за окном
    """

    builtin: Optional[BuiltinMap] = None
    source: Optional[str] = None
    target: str
    reindex: List[int] = Field(default_factory=list)
    components: List[LevelMatrix] = Field(default_factory=list)
    tail: Optional[TailSchema] = None

    @model_validator(mode="after")
    def check_shape(self) -> "MapSchema":
        if self.builtin is None and (self.source is None or not self.components):
            raise ValueError("нужны source и components или builtin")
        return self


class TaskSchema(BaseInputSchema):
    """
    Запрос операции

    Attributes:
        op (TaskName): Операция
        map (Optional[str]): Морфизм
        source (Optional[str]): Башня X
        target (Optional[str]): Башня Y
        spectrum (Optional[str]): Спектр
        degree (int): Степень r или n
        n_range (Optional[Tuple[int, int]]): Степени для слабой эквивалентности
        p_range (Optional[Tuple[int, int]]): Окно по p
        q_range (Optional[Tuple[int, int]]): Окно по q
        pages (Optional[int]): Последняя страница
        window (Optional[int]): Окно поиска
        coefficients (List[str]): Группы коэффициентов
    """

    op: TaskName
    map: Optional[str] = None
    source: Optional[str] = None
    target: Optional[str] = None
    spectrum: Optional[str] = None
    degree: int = 0
    n_range: Optional[Tuple[int, int]] = None
    p_range: Optional[Tuple[int, int]] = None
    q_range: Optional[Tuple[int, int]] = None
    pages: Optional[int] = Field(None, ge=2)
    window: Optional[int] = Field(None, ge=0)
    coefficients: List[str] = Field(default_factory=list)


class InstanceDocSchema(BaseInputSchema):
    """
    Документ экземпляра

    Attributes:
        groups (Dict[str, GroupSchema]): Именованные группы
        spectra (Dict[str, SpectrumSchema]): Именованные спектры
        towers (Dict[str, TowerSchema]): Именованные башни
        maps (Dict[str, MapSchema]): Именованные морфизмы
        tasks (List[TaskSchema]): Задачи в порядке вывода
    """

    groups: Dict[str, GroupSchema] = Field(default_factory=dict)
    spectra: Dict[str, SpectrumSchema] = Field(default_factory=dict)
    towers: Dict[str, TowerSchema] = Field(default_factory=dict)
    maps: Dict[str, MapSchema] = Field(default_factory=dict)
    tasks: List[TaskSchema] = Field(default_factory=list)
