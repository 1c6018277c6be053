"""
Модуль прямых систем и фильтрованных копределов.

Включает в себя:
- FGDirectSystem: прямая система G_0 → G_1 → ... с окном и хвостом
- ColimClass: класс элемента уровня s в копределе
- Colimit: ленивый копредел с решаемым равенством классов
- GermDirectSystem: система ∏_{k≥n} Z с отбрасыванием первой координаты
  (ростки на бесконечности)
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from math import lcm
from typing import Optional, Sequence, Tuple

from app.core.exceptions import (NotComposableError, TailMismatchError,
                                 WindowExhaustedError)
from app.schemas.v1.verdicts import Scope, TailKind

from .groups import FGAbelianGroup, GroupHom, kernel
from .matrix import IntMatrix, Vector
from .towers import TailRule

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FGDirectSystem:
    """
    Прямая система: bonds[s] действует из levels[s] в levels[s+1].

    Attributes:
        levels (Tuple[FGAbelianGroup, ...]): Реализованные уровни 0..W
        bonds (Tuple[GroupHom, ...]): Отображения s → s+1
        tail (Optional[TailRule]): Хвостовое правило (сдвиг 0)
    """

    levels: Tuple[FGAbelianGroup, ...]
    bonds: Tuple[GroupHom, ...]
    tail: Optional[TailRule] = None

    def __post_init__(self) -> None:
        if len(self.bonds) != len(self.levels) - 1:
            raise TailMismatchError(len(self.bonds), "число связок")
        for s, bond in enumerate(self.bonds):
            if not (
                bond.source.same_presentation(self.levels[s])
                and bond.target.same_presentation(self.levels[s + 1])
            ):
                raise NotComposableError(f"direct system bond {s}")
        if self.tail is not None:
            self._check_tail()

    @classmethod
    def constant(cls, group: FGAbelianGroup) -> "FGDirectSystem":
        return cls((group, group), (GroupHom.identity(group),), TailRule.constant(0))

    @classmethod
    def from_endomorphism(
        cls, group: FGAbelianGroup, bond: GroupHom
    ) -> "FGDirectSystem":
        return cls((group, group), (bond,), TailRule.periodic(0, 1, 0))

    @property
    def window(self) -> int:
        return len(self.levels) - 1

    def _check_tail(self) -> None:
        tail, window = self.tail, self.window
        rule = tail.kind.value
        if tail.base_end > window or (tail.is_periodic and tail.shift):
            raise TailMismatchError(tail.base_end, rule)
        for s in range(tail.start, window + 1):
            if tail.kind == TailKind.EVENTUALLY_ZERO:
                ok = self.levels[s].is_trivial()
            elif tail.kind == TailKind.EVENTUALLY_CONSTANT:
                ok = self.levels[s].same_presentation(self.levels[tail.start]) and (
                    s == window
                    or self.bonds[s] == GroupHom.identity(self.levels[tail.start])
                )
            else:
                base = tail.reduce(s)[0]
                ok = self.levels[s].same_presentation(self.levels[base]) and (
                    s == window or self.bonds[s].matrix == self.bonds[base].matrix
                )
            if not ok:
                raise TailMismatchError(s, rule)

    def level(self, s: int) -> FGAbelianGroup:
        if s <= self.window:
            return self.levels[s]
        tail = self._require_tail("level")
        if tail.kind == TailKind.EVENTUALLY_ZERO:
            return FGAbelianGroup.zero()
        if tail.kind == TailKind.EVENTUALLY_CONSTANT:
            return self.levels[tail.start]
        return self.levels[tail.reduce(s)[0]]

    def bond(self, s: int) -> GroupHom:
        if s < self.window:
            return self.bonds[s]
        tail = self._require_tail("bond")
        if tail.kind == TailKind.EVENTUALLY_ZERO:
            return GroupHom.zero(self.level(s), self.level(s + 1))
        if tail.kind == TailKind.EVENTUALLY_CONSTANT:
            return GroupHom.identity(self.levels[tail.start])
        base = self.bonds[tail.reduce(s)[0]]
        return GroupHom(self.level(s), self.level(s + 1), base.matrix)

    def push(self, element: Sequence[int], s: int, t: int) -> Vector:
        """
        Образ элемента уровня s на уровне t ≥ s.
        """
        vector = tuple(element)
        for u in range(s, t):
            vector = self.bond(u).apply(vector)
        return vector

    def _require_tail(self, operation: str) -> TailRule:
        if self.tail is None:
            raise WindowExhaustedError(operation, self.window)
        return self.tail


@dataclass(frozen=True)
class ColimClass:
    """
    Класс элемента в копределе.

    Attributes:
        level (int): Уровень s
        element (Tuple[int, ...]): Координаты в группе уровня s
    """

    level: int
    element: Tuple[int, ...]


class Colimit:
    """
    Ленивый копредел прямой системы.

    Группа вычисляется, когда хвост это позволяет: постоянный и нулевой
    хвосты дают группу уровня start, периодический дает G/K∞, если
    индуцированный эндоморфизм обратим. Иначе (например, Z[1/2])
    доступно только исчисление классов.

    Attributes:
        system (FGDirectSystem): Прямая система
        group (Optional[FGAbelianGroup]): Копредел или None
        scope (Scope): Чем закрыто вычисление группы
    """

    def __init__(self, system: FGDirectSystem):
        self.system = system
        self.logger = logging.getLogger(self.__class__.__name__)

    @property
    def scope(self) -> Scope:
        return Scope.WINDOW if self.system.tail is None else Scope.TAIL

    @cached_property
    def _quotient(
        self,
    ) -> Optional[Tuple[FGAbelianGroup, GroupHom, GroupHom, IntMatrix]]:
        # (G/K∞, проекция G → G/K∞, автоморфизм фазы, подъем в G)
        tail = self.system.tail
        base = self.system.level(tail.start)
        phase = self._phase_map(tail.start)
        stable, _ = _stable_kernel(phase)
        raw = FGAbelianGroup(
            IntMatrix.hstack(base.generators, base.relations, stable).T
        )
        standard, to_standard, from_standard = raw.minimize()
        induced = GroupHom(
            standard,
            standard,
            to_standard.matrix @ phase.matrix @ from_standard.matrix,
        )
        if not induced.is_isomorphism():
            self.logger.debug("копредел не конечно порожден: %s", tail.description)
            return None
        projection = GroupHom(base, standard, to_standard.matrix)
        return standard, projection, induced, from_standard.matrix

    @cached_property
    def group(self) -> Optional[FGAbelianGroup]:
        tail = self.system.tail
        if tail is None:
            return None
        if tail.kind == TailKind.EVENTUALLY_ZERO:
            return FGAbelianGroup.zero()
        if tail.kind == TailKind.EVENTUALLY_CONSTANT:
            return self.system.level(tail.start)
        quotient = self._quotient
        return None if quotient is None else quotient[0]

    def coordinates(self, cls: ColimClass) -> Optional[Vector]:
        """
        Координаты класса на образующих группы копредела.

        Returns:
            Вектор в group или None, если группа не вычислена
        """
        if self.group is None:
            return None
        tail = self.system.tail
        if tail.kind == TailKind.EVENTUALLY_ZERO:
            return ()
        t = max(cls.level, tail.start)
        if tail.kind == TailKind.EVENTUALLY_CONSTANT:
            return self.system.push(cls.element, cls.level, t)
        stage = -(-(t - tail.start) // tail.period)
        t = tail.start + stage * tail.period
        element = self.system.push(cls.element, cls.level, t)
        _, projection, induced, _ = self._quotient
        vector = projection.apply(element)
        back = induced.inverse()
        for _ in range(stage):
            vector = back.apply(vector)
        return vector

    def representative(self, coordinates: Sequence[int]) -> ColimClass:
        """
        Класс с заданными координатами на образующих group.

        Raises:
            WindowExhaustedError: Группа копредела не вычислена
        """
        if self.group is None:
            raise WindowExhaustedError("colimit representative", self.system.window)
        tail = self.system.tail
        if tail.kind == TailKind.EVENTUALLY_ZERO:
            zero = (0,) * self.system.level(tail.start).generators
            return ColimClass(tail.start, zero)
        if tail.kind == TailKind.EVENTUALLY_CONSTANT:
            return ColimClass(tail.start, tuple(coordinates))
        lift = self._quotient[3]
        return ColimClass(tail.start, lift.apply(coordinates))

    def _phase_map(self, s: int) -> GroupHom:
        period = self.system.tail.period
        matrix = IntMatrix.identity(self.system.level(s).generators)
        for u in range(s, s + period):
            matrix = self.system.bond(u).matrix @ matrix
        return GroupHom(self.system.level(s), self.system.level(s), matrix)

    def decide_zero(self, cls: ColimClass) -> Tuple[bool, Scope]:
        """
        Решает, равен ли класс нулю.

        Returns:
            (ответ, область доказательства)

        Raises:
            WindowExhaustedError: Без хвоста класс не обнулился в окне
        """
        system = self.system
        tail = system.tail
        if tail is None:
            if cls.level <= system.window:
                image = system.push(cls.element, cls.level, system.window)
                if system.level(system.window).is_zero(image):
                    return True, Scope.WINDOW
            raise WindowExhaustedError("colim_is_zero", system.window)
        t = max(cls.level, tail.start)
        element = system.push(cls.element, cls.level, t)
        if tail.kind == TailKind.EVENTUALLY_ZERO:
            return True, Scope.TAIL
        if tail.kind == TailKind.EVENTUALLY_CONSTANT:
            return system.level(t).is_zero(element), Scope.TAIL
        phase = self._phase_map(t)
        _, exponent = _stable_kernel(phase)
        for _ in range(exponent):
            element = phase.apply(element)
        return system.level(t).is_zero(element), Scope.TAIL

    def is_zero(self, cls: ColimClass) -> bool:
        return self.decide_zero(cls)[0]

    def eq(self, a: ColimClass, b: ColimClass) -> bool:
        """
        Равенство классов: оба переносятся на общий уровень.
        """
        t = max(a.level, b.level)
        x = self.system.push(a.element, a.level, t)
        y = self.system.push(b.element, b.level, t)
        return self.is_zero(ColimClass(t, tuple(p - q for p, q in zip(x, y))))


def _stable_kernel(phi: GroupHom) -> Tuple[IntMatrix, int]:
    """
    Устойчивое ядро K∞ = ∪ ker φ^k и показатель стабилизации.
    """
    group = phi.source
    power = GroupHom.identity(group)
    previous: Optional[IntMatrix] = None
    exponent = 0
    while True:
        current = kernel(power).inclusion.matrix
        if previous is not None and all(
            group.in_subgroup(previous, column) for column in current.columns()
        ):
            return previous, exponent - 1
        previous = current
        power = phi @ power
        exponent += 1


def colim_system(system: FGDirectSystem) -> Colimit:
    """
    Ленивый копредел прямой системы.

    Example:
        >>> Z = FGAbelianGroup.free(1)
        >>> colim_is_zero(colim_system(FGDirectSystem.constant(Z)), ColimClass(0, (1,)))
        False
    """
    return Colimit(system)


def colim_eq(colimit: Colimit, a: ColimClass, b: ColimClass) -> bool:
    return colimit.eq(a, b)


def colim_is_zero(colimit: Colimit, cls: ColimClass) -> bool:
    return colimit.is_zero(cls)


@dataclass(frozen=True)
class GermClass:
    """
    Элемент ∏_{k≥level} Z, заданный предпериодом и периодом.

    Attributes:
        level (int): Уровень n
        prefix (Tuple[int, ...]): Координаты k = n, n+1, ... до начала цикла
        cycle (Tuple[int, ...]): Повторяющийся блок
    """

    level: int
    prefix: Tuple[int, ...] = ()
    cycle: Tuple[int, ...] = (0,)

    def coordinate(self, k: int) -> int:
        index = k - self.level
        if index < len(self.prefix):
            return self.prefix[index]
        return self.cycle[(index - len(self.prefix)) % len(self.cycle)]

    def push(self, t: int) -> "GermClass":
        """
        Образ на уровне t ≥ level (отбрасывание первых координат).
        """
        drop = t - self.level
        if drop <= len(self.prefix):
            return GermClass(t, self.prefix[drop:], self.cycle)
        shift = (drop - len(self.prefix)) % len(self.cycle)
        return GermClass(t, (), self.cycle[shift:] + self.cycle[:shift])

    @property
    def periodic_from(self) -> int:
        return self.level + len(self.prefix)


class GermDirectSystem:
    """
    Система ∏_{k≥0} Z → ∏_{k≥1} Z → ... с отбрасыванием первой координаты.

    Элементы представлены конечно (предпериод и цикл), поэтому равенство
    ростков на бесконечности решается точно.

    Attributes:
        label (str): Описание координат, например "π_{2k} KU"
    """

    def __init__(self, label: str = "Z"):
        self.label = label
        self.logger = logging.getLogger(self.__class__.__name__)

    def level_description(self, n: int) -> str:
        return f"∏_{{k≥{n}}} {self.label}"

    def eq(self, a: GermClass, b: GermClass) -> bool:
        start = max(a.periodic_from, b.periodic_from)
        length = lcm(len(a.cycle), len(b.cycle))
        return all(
            a.coordinate(k) == b.coordinate(k) for k in range(start, start + length)
        )

    def is_zero(self, cls: GermClass) -> bool:
        return self.eq(cls, GermClass(cls.level))

    @staticmethod
    def all_ones(level: int = 0) -> GermClass:
        return GermClass(level, (), (1,))

    def window_values(self, cls: GermClass, t: int, width: int) -> Tuple[int, ...]:
        """
        Первые width координат образа класса на уровне t.
        """
        pushed = cls.push(t)
        return tuple(pushed.coordinate(k) for k in range(t, t + width))
