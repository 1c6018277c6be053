"""
Модуль разбора документов экземпляров.

Включает в себя:
- Instance: проверенный документ с построенными объектами
- InstanceParser: разбор текста с позиционированными ошибками
- parse / serialize: разбор и каноническая запись документа
- builtin_document: встроенные документы counterexample и cp2

Помимо объектов документа по именам доступны встроенные значения:
башни "counterexample", "ku", "cp<N>", "zero" (или "0"), группы "Z",
"Z/<n>", "0" и периодическое семейство "KU". Морфизм вида "0→T"
означает нулевой морфизм из нулевой башни в T.
"""

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from app.core.exceptions import (BaseEngineException, InstanceParseError,
                                 TaskError, WindowExhaustedError)
from app.schemas.v1.instance import (BuiltinMap, BuiltinTower,
                                     InstanceDocSchema, LevelMatrix, MapSchema,
                                     SpectrumSchema, TailSchema, TaskName,
                                     TaskSchema, TowerSchema)
from app.services.v1.abelian import (FGAbelianGroup, GroupHom, IntMatrix,
                                     TailRule)
from app.services.v1.base import BaseService
from app.services.v1.complexes import ChainMap, FormalSpectrum
from app.services.v1.procat import ProMap, Reindex, Tower, constant
from app.services.v1.prospectra import (FORMAL_KU, PeriodicFamily,
                                        counterexample, cpn_tower, ku,
                                        zero_map, zero_tower)

Location = Tuple[Union[str, int], ...]
Level = Union[FGAbelianGroup, FormalSpectrum]

ZERO_MAP = re.compile(r"^0\s*(?:→|->)\s*(\S+)$")
CPN = re.compile(r"^cp(\d+)$")
CYCLIC = re.compile(r"^Z/(\d+)$")

REQUIRED: Dict[TaskName, Tuple[str, ...]] = {
    TaskName.HOMOLOGY: ("spectrum",),
    TaskName.LIM: ("source",),
    TaskName.PROISO: ("map",),
    TaskName.WEQ: ("map",),
    TaskName.LES: ("map",),
    TaskName.PROMAPS: ("source", "target"),
    TaskName.COHOMOLOGY: ("source",),
    TaskName.NAIVE: (),
    TaskName.BOUNDED: ("source",),
    TaskName.CONVERGENCE: ("source", "target"),
    TaskName.ABUTMENT: ("source", "target"),
    TaskName.WHITEHEAD: ("map",),
    TaskName.AHSS: ("source", "target"),
}

FAMILIES: Dict[str, PeriodicFamily] = {FORMAL_KU.name: FORMAL_KU}


def builtin_group(name: str) -> Optional[FGAbelianGroup]:
    """
    Группы "Z", "Z/n" и "0".

    Example:
        >>> builtin_group("Z/2").describe()
        'Z/2'
    """
    if name == "Z":
        return FGAbelianGroup.free(1)
    if name == "0":
        return FGAbelianGroup.zero()
    match = CYCLIC.match(name)
    if match and int(match.group(1)) >= 2:
        return FGAbelianGroup.cyclic(int(match.group(1)))
    return None


@lru_cache(maxsize=None)
def builtin_tower(name: str) -> Optional[Tower]:
    if name == "counterexample":
        return counterexample()
    if name == "ku":
        return ku()
    if name in ("zero", "0"):
        return zero_tower()
    match = CPN.match(name)
    if match:
        return cpn_tower(int(match.group(1)))
    return None


def _position(text: str, loc: Location) -> Tuple[int, int]:
    # Последовательно ищет ключи пути; индексы списков пропускаются
    offset = 0
    for part in loc:
        if isinstance(part, str):
            found = text.find(json.dumps(part, ensure_ascii=False), offset)
            if found >= 0:
                offset = found
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


@dataclass
class Instance:
    """
    Проверенный документ с построенными объектами.

    Attributes:
        doc (InstanceDocSchema): Документ
        groups (Dict[str, FGAbelianGroup]): Группы документа
        spectra (Dict[str, FormalSpectrum]): Спектры документа
        towers (Dict[str, Tower]): Башни документа
        maps (Dict[str, ProMap]): Морфизмы документа
    """

    doc: InstanceDocSchema = field(default_factory=InstanceDocSchema)
    groups: Dict[str, FGAbelianGroup] = field(default_factory=dict)
    spectra: Dict[str, FormalSpectrum] = field(default_factory=dict)
    towers: Dict[str, Tower] = field(default_factory=dict)
    maps: Dict[str, ProMap] = field(default_factory=dict)

    @property
    def tasks(self) -> List[TaskSchema]:
        return self.doc.tasks

    def find_group(self, name: str) -> Optional[FGAbelianGroup]:
        if name in self.groups:
            return self.groups[name]
        return builtin_group(name)

    def find_tower(self, name: str) -> Optional[Tower]:
        if name in self.towers:
            return self.towers[name]
        return builtin_tower(name)

    def find_target(self, name: str) -> Optional[Union[Tower, PeriodicFamily]]:
        tower = self.find_tower(name)
        return FAMILIES.get(name) if tower is None else tower

    def find_map(self, name: str) -> Optional[ProMap]:
        if name in self.maps:
            return self.maps[name]
        match = ZERO_MAP.match(name)
        if match:
            target = self.find_tower(match.group(1))
            return None if target is None else zero_map(target)
        return None

    def find_level(self, name: str) -> Optional[Level]:
        if name in self.spectra:
            return self.spectra[name]
        return self.find_group(name)

    def group(self, name: str) -> FGAbelianGroup:
        return self._require(self.find_group(name), "группа", name)

    def tower(self, name: str) -> Tower:
        return self._require(self.find_tower(name), "башня", name)

    def target(self, name: str) -> Union[Tower, PeriodicFamily]:
        return self._require(self.find_target(name), "башня", name)

    def map(self, name: str) -> ProMap:
        return self._require(self.find_map(name), "морфизм", name)

    def spectrum(self, name: str) -> FormalSpectrum:
        return self._require(self.spectra.get(name), "спектр", name)

    @staticmethod
    def _require(value: Any, kind: str, name: str) -> Any:
        if value is None:
            raise TaskError("lookup", f"{kind} {name!r} не найден(а)")
        return value


class InstanceParser(BaseService):
    """
    Разбор документа: синтаксис, схема, затем построение объектов.

    Ошибки каждого этапа собираются списком с позициями; этап
    построения продолжается после ошибки, чтобы сообщить все сразу.
    """

    def __init__(self) -> None:
        super().__init__()
        self.text = ""
        self.errors: List[dict] = []

    def parse(self, text: str) -> Instance:
        """
        Разбирает текст документа.

        Args:
            text: Текст UTF-8

        Returns:
            Instance: Проверенный экземпляр

        Raises:
            InstanceParseError: Синтаксис, схема, неразрешенные имена,
                несогласованные матрицы или d∘d ≠ 0
        """
        self.text = text
        self.errors = []
        if not text.strip():
            return Instance()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InstanceParseError(
                [{"line": e.lineno, "column": e.colno, "message": e.msg}]
            )
        try:
            doc = InstanceDocSchema.model_validate(data)
        except ValidationError as e:
            for error in e.errors():
                self._error(tuple(error["loc"]), error["msg"])
            raise InstanceParseError(self.errors)
        instance = self.build(doc)
        if self.errors:
            raise InstanceParseError(self.errors)
        self.logger.info(
            "✅ документ разобран: %s башен, %s морфизмов, %s задач",
            len(instance.towers),
            len(instance.maps),
            len(instance.tasks),
        )
        return instance

    def build(self, doc: InstanceDocSchema) -> Instance:
        instance = Instance(doc)
        for name, group in doc.groups.items():
            instance.groups[name] = FGAbelianGroup.from_invariants(
                group.rank, group.torsion
            )
        for name, spectrum in doc.spectra.items():
            built = self._spectrum(name, spectrum)
            if built is not None:
                instance.spectra[name] = built
        for name, tower in doc.towers.items():
            built = self._tower(instance, name, tower)
            if built is not None:
                instance.towers[name] = built
        for name, promap in doc.maps.items():
            built = self._map(instance, name, promap)
            if built is not None:
                instance.maps[name] = built
        for index, task in enumerate(doc.tasks):
            self._task(instance, index, task)
        return instance

    def _error(self, loc: Location, message: str) -> None:
        line, column = _position(self.text, loc)
        self.errors.append(
            {
                "line": line,
                "column": column,
                "path": "/".join(str(part) for part in loc),
                "message": message,
            }
        )

    def _matrix(
        self, rows: List[List[int]], shape: Tuple[int, int], loc: Location
    ) -> Optional[IntMatrix]:
        if not rows:
            if shape[0]:
                self._error(loc, f"пустая матрица, ожидается размер {shape}")
                return None
            return IntMatrix.zeros(*shape)
        if any(len(row) != len(rows[0]) for row in rows):
            self._error(loc, "строки матрицы разной длины")
            return None
        matrix = IntMatrix.from_rows(rows)
        if matrix.shape != shape:
            self._error(loc, f"размер {matrix.shape}, ожидается {shape}")
            return None
        return matrix

    def _spectrum(self, name: str, spec: SpectrumSchema) -> Optional[FormalSpectrum]:
        loc: Location = ("spectra", name)
        diffs = {}
        for k, rows in spec.diff.items():
            shape = (spec.degrees.get(k - 1, 0), spec.degrees.get(k, 0))
            matrix = self._matrix(rows, shape, (*loc, "diff", str(k)))
            if matrix is None:
                return None
            diffs[k] = matrix
        try:
            return FormalSpectrum.build(spec.degrees, diffs, name)
        except BaseEngineException as e:
            degree = e.extra.get("degree")
            where = loc if degree is None else (*loc, "diff", str(degree))
            self._error(where, e.detail)
            return None

    def _tail(self, tail: Optional[TailSchema]) -> Optional[TailRule]:
        if tail is None:
            return None
        return TailRule(tail.kind, tail.start, tail.period, tail.shift)

    def _level_map(
        self, source: Level, target: Level, data: LevelMatrix, loc: Location
    ) -> Optional[Any]:
        """
        Связка или компонента: матрица для групп, словарь по степеням
        для спектров.
        """
        if isinstance(source, FGAbelianGroup) != isinstance(target, FGAbelianGroup):
            self._error(loc, "уровни из разных категорий")
            return None
        try:
            if isinstance(source, FGAbelianGroup):
                if not isinstance(data, list):
                    self._error(loc, "для групп нужна одна матрица")
                    return None
                shape = (target.generators, source.generators)
                matrix = self._matrix(data, shape, loc)
                return None if matrix is None else GroupHom(source, target, matrix)
            if not isinstance(data, dict):
                self._error(loc, "для спектров нужен словарь степень → матрица")
                return None
            components = {}
            for k, rows in data.items():
                shape = (target.rank(k), source.rank(k))
                matrix = self._matrix(rows, shape, (*loc, str(k)))
                if matrix is None:
                    return None
                components[k] = matrix
            return ChainMap.build(source, target, components)
        except BaseEngineException as e:
            self._error(loc, e.detail)
            return None

    def _builtin_tower(
        self, instance: Instance, name: str, spec: TowerSchema
    ) -> Optional[Tower]:
        if spec.builtin == BuiltinTower.COUNTEREXAMPLE:
            return counterexample(spec.width, spec.window)
        if spec.builtin == BuiltinTower.KU:
            return ku(spec.window)
        if spec.builtin == BuiltinTower.CPN:
            return cpn_tower(spec.n, spec.window)
        if spec.builtin == BuiltinTower.ZERO:
            return zero_tower(spec.window)
        level = instance.find_level(spec.of)
        if level is None:
            self._error(("towers", name, "of"), f"не найдено имя {spec.of!r}")
            return None
        return constant(level, spec.window, name)

    def _tower(
        self, instance: Instance, name: str, spec: TowerSchema
    ) -> Optional[Tower]:
        loc: Location = ("towers", name)
        if spec.builtin is not None:
            return self._builtin_tower(instance, name, spec)
        levels = []
        for s, level_name in enumerate(spec.levels):
            level = instance.find_level(level_name)
            if level is None:
                self._error((*loc, "levels", s), f"не найдено имя {level_name!r}")
                return None
            levels.append(level)
        bonds = []
        for s, data in enumerate(spec.bonds):
            bond = self._level_map(levels[s + 1], levels[s], data, (*loc, "bonds", s))
            if bond is None:
                return None
            bonds.append(bond)
        try:
            return Tower.from_levels(
                tuple(levels), tuple(bonds), self._tail(spec.tail), name
            )
        except BaseEngineException as e:
            self._error(loc, e.detail)
            return None

    def _map(self, instance: Instance, name: str, spec: MapSchema) -> Optional[ProMap]:
        loc: Location = ("maps", name)
        target = instance.find_tower(spec.target)
        if target is None:
            self._error((*loc, "target"), f"не найдена башня {spec.target!r}")
            return None
        if spec.builtin == BuiltinMap.ZERO:
            return zero_map(target)
        if spec.builtin == BuiltinMap.IDENTITY:
            return ProMap.identity(target)
        source = instance.find_tower(spec.source)
        if source is None:
            self._error((*loc, "source"), f"не найдена башня {spec.source!r}")
            return None
        try:
            theta = Reindex.from_table(tuple(spec.reindex)) if spec.reindex else None
            components = []
            for s, data in enumerate(spec.components):
                source_level = source.level(theta(s) if theta else s)
                component = self._level_map(
                    source_level, target.level(s), data, (*loc, "components", s)
                )
                if component is None:
                    return None
                components.append(component)

            def component(s: int) -> Any:
                if s >= len(components):
                    raise WindowExhaustedError(
                        "component", len(components) - 1, {"map": name}
                    )
                return components[s]

            return ProMap(
                source,
                target,
                component,
                theta,
                self._tail(spec.tail),
                name,
                window=len(components) - 1,
            )
        except BaseEngineException as e:
            self._error(loc, e.detail)
            return None

    def _task(self, instance: Instance, index: int, task: TaskSchema) -> None:
        loc: Location = ("tasks", index)
        for field_name in REQUIRED[task.op]:
            if getattr(task, field_name) is None:
                self._error(loc, f"операции {task.op.value} нужно поле {field_name}")
        lookups = (
            ("map", instance.find_map),
            ("source", instance.find_target),
            ("target", instance.find_target),
            ("spectrum", instance.spectra.get),
        )
        for field_name, find in lookups:
            value = getattr(task, field_name)
            if value is not None and find(value) is None:
                self._error((*loc, field_name), f"не найдено имя {value!r}")
        for name in task.coefficients:
            if instance.find_group(name) is None:
                self._error((*loc, "coefficients"), f"не найдена группа {name!r}")


def parse(text: str) -> Instance:
    """
    Разбор документа экземпляра.

    Example:
        >>> parse("").tasks
        []
    """
    return InstanceParser().parse(text)


def serialize(doc: InstanceDocSchema) -> str:
    """
    Каноническая запись документа: значения по умолчанию опущены,
    ключи отсортированы.
    """
    data = doc.model_dump(mode="json", exclude_defaults=True)
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _document(towers: Dict[str, TowerSchema], tasks: Sequence[TaskSchema], **extra):
    return InstanceDocSchema(towers=towers, tasks=list(tasks), **extra)


def builtin_document(name: str) -> InstanceDocSchema:
    """
    Встроенные документы.

    "counterexample": башня ⋁_{k≥s} S^{2k} против формального KU;
    "cp<N>": постоянная башня CP^N против формального KU.

    Raises:
        TaskError: Неизвестное имя
    """
    ku_tower = TowerSchema(builtin=BuiltinTower.KU)
    if name == "counterexample":
        return _document(
            {
                "X": TowerSchema(builtin=BuiltinTower.COUNTEREXAMPLE),
                "KU_tower": ku_tower,
            },
            [
                TaskSchema(op=TaskName.COHOMOLOGY, source="X", coefficients=["Z"]),
                TaskSchema(op=TaskName.NAIVE, target="KU"),
                TaskSchema(op=TaskName.PROMAPS, source="X", target="KU_tower"),
                TaskSchema(op=TaskName.WEQ, map="w"),
                TaskSchema(op=TaskName.CONVERGENCE, source="X", target="KU_tower"),
                TaskSchema(op=TaskName.AHSS, source="X", target="KU_tower"),
            ],
            maps={"w": MapSchema(builtin=BuiltinMap.ZERO, target="X")},
        )
    match = CPN.match(name)
    if match:
        return _document(
            {
                "X": TowerSchema(builtin=BuiltinTower.CPN, n=int(match.group(1))),
                "KU_tower": ku_tower,
            },
            [
                TaskSchema(op=TaskName.AHSS, source="X", target="KU_tower"),
                TaskSchema(op=TaskName.CONVERGENCE, source="X", target="KU_tower"),
                TaskSchema(op=TaskName.ABUTMENT, source="X", target="KU_tower"),
            ],
        )
    raise TaskError("builtin", f"нет встроенного документа {name!r}")

