"""
Модуль башен над теорией уровней.

Включает в себя:
- Tower: ленивая мемоизированная башня X_0 ← X_1 ← ... с окном и хвостом
- constant: постоянный про-объект
- Reindex: монотонная кофинальная переиндексация θ: ℕ → ℕ
- reindexed_tail: хвостовое правило башни s ↦ X_{θ(s)}
- map_levels: поуровневое применение функтора
- as_group_tower: башня групп для lim и lim¹
- BiTower / diagonalize: двуиндексные семейства и их диагональ
"""

import logging
import threading
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Any, Callable, Dict, NamedTuple, Optional, Tuple

from app.core.config import config
from app.core.exceptions import (NonCommutingSquareError, NotCofinalError,
                                 TailMismatchError, WindowExhaustedError)
from app.schemas.v1.verdicts import TailKind
from app.services.v1.abelian import GroupTower, TailRule

from .theories import LevelTheory, theory_of

logger = logging.getLogger(__name__)


class Tower:
    """
    Башня: bond(s) действует из level(s+1) в level(s).

    Уровни до окна берутся из генераторов, дальше из хвостового
    правила. Без правила выход за окно дает WindowExhaustedError.
    Запись в кеш одна на уровень, чтения конкурентны.

    Attributes:
        theory (LevelTheory): Категория уровней
        window (int): Реализованный отрезок [0, window]
        tail (Optional[TailRule]): Хвостовое правило
        name (str): Имя для отчетов

    Raises:
        TailMismatchError: Правило расходится с уровнями на границе окна
    """

    def __init__(
        self,
        theory: LevelTheory,
        level: Callable[[int], Any],
        bond: Callable[[int], Any],
        window: Optional[int] = None,
        tail: Optional[TailRule] = None,
        name: str = "",
    ):
        self.theory = theory
        self.window = config.window if window is None else window
        self.tail = tail
        self.name = name
        self._level_source = level
        self._bond_source = bond
        self._levels: Dict[int, Any] = {}
        self._bonds: Dict[int, Any] = {}
        self._lock = threading.Lock()
        if tail is not None:
            self._check_tail()

    @classmethod
    def from_levels(
        cls,
        levels: Tuple[Any, ...],
        bonds: Tuple[Any, ...],
        tail: Optional[TailRule] = None,
        name: str = "",
        theory: Optional[LevelTheory] = None,
    ) -> "Tower":
        """
        Башня по явным спискам уровней 0..W и связок 0..W-1.
        """
        if len(bonds) != len(levels) - 1:
            raise TailMismatchError(len(bonds), "число связок")
        theory = theory or theory_of(levels[0])
        return cls(
            theory,
            lambda s: levels[s],
            lambda s: bonds[s],
            len(levels) - 1,
            tail,
            name,
        )

    def level(self, s: int) -> Any:
        with self._lock:
            if s in self._levels:
                return self._levels[s]
        value = self._compute_level(s)
        with self._lock:
            return self._levels.setdefault(s, value)

    def bond(self, s: int) -> Any:
        """
        Связка level(s+1) → level(s).
        """
        with self._lock:
            if s in self._bonds:
                return self._bonds[s]
        value = self._compute_bond(s)
        with self._lock:
            return self._bonds.setdefault(s, value)

    def composite(self, t: int, s: int) -> Any:
        """
        Составное отображение level(t) → level(s) для t ≥ s.
        """
        result = self.theory.identity(self.level(s))
        for u in range(s, t):
            result = self.theory.compose(result, self.bond(u))
        return result

    def available(self, s: int) -> bool:
        return s <= self.window or self.tail is not None

    def describe(self, upto: Optional[int] = None) -> str:
        upto = self.window if upto is None else upto
        levels = " ← ".join(
            self.theory.describe(self.level(s)) for s in range(min(upto, 3) + 1)
        )
        return f"{self.name or 'tower'}: {levels} ← ..."

    def to_dict(self, upto: Optional[int] = None) -> dict:
        upto = self.window if upto is None else upto
        return {
            "name": self.name,
            "theory": self.theory.name,
            "window": self.window,
            "tail": None if self.tail is None else self.tail.to_dict(),
            "levels": [
                self.theory.describe(self.level(s)) for s in range(upto + 1)
            ],
        }

    def _compute_level(self, s: int) -> Any:
        if s <= self.window:
            return self._level_source(s)
        tail = self._require_tail("level")
        if tail.kind == TailKind.EVENTUALLY_ZERO:
            return self.theory.zero_object()
        if tail.kind == TailKind.EVENTUALLY_CONSTANT:
            return self.level(tail.start)
        base, m = tail.reduce(s)
        return self.theory.shift(self.level(base), m)

    def _compute_bond(self, s: int) -> Any:
        if s < self.window:
            return self._bond_source(s)
        tail = self._require_tail("bond")
        if tail.kind == TailKind.EVENTUALLY_ZERO:
            return self.theory.zero(self.level(s + 1), self.level(s))
        if tail.kind == TailKind.EVENTUALLY_CONSTANT:
            return self.theory.identity(self.level(tail.start))
        base, m = tail.reduce(s)
        return self.theory.shift_map(self.bond(base), m)

    def _require_tail(self, operation: str) -> TailRule:
        if self.tail is None:
            raise WindowExhaustedError(operation, self.window, {"tower": self.name})
        return self.tail

    def _check_tail(self) -> None:
        tail, window = self.tail, self.window
        rule = tail.kind.value
        if tail.base_end > window:
            raise TailMismatchError(tail.base_end, rule)
        theory = self.theory
        first = max(tail.start, window - 2 * tail.period)
        for s in range(first, window + 1):
            level = self._level_source(s)
            if tail.kind == TailKind.EVENTUALLY_ZERO:
                ok = theory.is_zero_object(level)
            elif tail.kind == TailKind.EVENTUALLY_CONSTANT:
                base = self._level_source(tail.start)
                ok = theory.same(level, base) and (
                    s == window
                    or theory.equal(self._bond_source(s), theory.identity(base))
                )
            else:
                if s < tail.start + tail.period:
                    continue
                previous = s - tail.period
                ok = theory.same(
                    level, theory.shift(self._level_source(previous), tail.shift)
                ) and (
                    s == window
                    or theory.equal(
                        self._bond_source(s),
                        theory.shift_map(self._bond_source(previous), tail.shift),
                    )
                )
            if not ok:
                raise TailMismatchError(s, rule)


def constant(X: Any, window: Optional[int] = None, name: str = "") -> Tower:
    """
    Постоянный про-объект: все уровни X, связки тождественны.

    Example:
        >>> from app.services.v1.complexes import sphere
        >>> constant(sphere(0)).level(5) == sphere(0)
        True
    """
    theory = theory_of(X)
    identity = theory.identity(X)
    return Tower(
        theory,
        lambda s: X,
        lambda s: identity,
        window,
        TailRule.constant(0),
        name or f"const {theory.describe(X)}",
    )


def map_levels(
    tower: Tower,
    on_level: Callable[[Any], Any],
    on_bond: Callable[[Any], Any],
    theory: LevelTheory,
    tail: Optional[TailRule] = None,
    name: str = "",
    window: Optional[int] = None,
) -> Tower:
    """
    Поуровневое применение функтора к башне.

    Args:
        tower: Исходная башня
        on_level: Действие на объектах
        on_bond: Действие на связках
        theory: Теория уровней результата
        tail: Правило результата (выводится вызывающим из правила башни)
        name: Имя результата
        window: Окно результата; по умолчанию окно башни
    """
    return Tower(
        theory,
        lambda s: on_level(tower.level(s)),
        lambda s: on_bond(tower.bond(s)),
        tower.window if window is None else window,
        tail,
        name,
    )


def as_group_tower(tower: Tower) -> GroupTower:
    """
    Башня групп с реализованным окном, покрывающим базу хвоста.
    """
    top = tower.window
    if tower.tail is not None:
        top = max(top, tower.tail.base_end)
    levels = tuple(tower.level(s) for s in range(top + 1))
    bonds = tuple(tower.bond(s) for s in range(top))
    return GroupTower(levels, bonds, tower.tail)


class ReindexKind(str, Enum):
    """
    Вид переиндексации

    Attributes:
        IDENTITY (str): θ(s) = s
        SHIFT (str): θ(s) = s + c
        SCALE (str): θ(s) = k·s
        TABLE (str): Таблица значений, дальше шаг 1
        COMPOSITE (str): Композиция переиндексаций
    """

    IDENTITY = "identity"
    SHIFT = "shift"
    SCALE = "scale"
    TABLE = "table"
    COMPOSITE = "composite"


@dataclass(frozen=True)
class Reindex:
    """
    Монотонная кофинальная переиндексация θ: ℕ → ℕ.

    Attributes:
        kind (ReindexKind): Вид
        amount (int): c для сдвига, k для растяжения
        table (Tuple[int, ...]): Значения θ(0), θ(1), ... для таблицы
        parts (Tuple[Reindex, ...]): (внешняя, внутренняя) для композиции

    Raises:
        NotCofinalError: θ убывает, уходит в отрицательные индексы или ограничена

    Example:
        >>> Reindex.scaled(2)(5)
        10
    """

    kind: ReindexKind = ReindexKind.IDENTITY
    amount: int = 0
    table: Tuple[int, ...] = ()
    parts: Tuple["Reindex", ...] = ()

    def __post_init__(self) -> None:
        if self.kind == ReindexKind.SHIFT and self.amount < 0:
            raise NotCofinalError(self.description)
        if self.kind == ReindexKind.SCALE and self.amount < 1:
            raise NotCofinalError(self.description)
        if self.kind == ReindexKind.TABLE:
            if not self.table or self.table[0] < 0:
                raise NotCofinalError(self.description)
            if any(b < a for a, b in zip(self.table, self.table[1:])):
                raise NotCofinalError(self.description)

    @classmethod
    def identity(cls) -> "Reindex":
        return cls()

    @classmethod
    def shifted(cls, c: int) -> "Reindex":
        return cls(ReindexKind.SHIFT, c) if c else cls()

    @classmethod
    def scaled(cls, k: int) -> "Reindex":
        return cls(ReindexKind.SCALE, k) if k != 1 else cls()

    @classmethod
    def from_table(cls, values: Tuple[int, ...]) -> "Reindex":
        """
        Таблица значений; после последнего значения θ растет с шагом 1.
        """
        values = tuple(values)
        if values and all(v == values[0] + i for i, v in enumerate(values)):
            if values[0] >= 0:
                return cls.shifted(values[0])
        return cls(ReindexKind.TABLE, table=values)

    def __call__(self, s: int) -> int:
        if self.kind == ReindexKind.IDENTITY:
            return s
        if self.kind == ReindexKind.SHIFT:
            return s + self.amount
        if self.kind == ReindexKind.SCALE:
            return s * self.amount
        if self.kind == ReindexKind.TABLE:
            last = len(self.table) - 1
            if s <= last:
                return self.table[s]
            return self.table[last] + s - last
        outer, inner = self.parts
        return outer(inner(s))

    def then(self, outer: "Reindex") -> "Reindex":
        """
        Композиция s ↦ outer(self(s)).
        """
        if self.kind == ReindexKind.IDENTITY:
            return outer
        if outer.kind == ReindexKind.IDENTITY:
            return self
        if self.kind == outer.kind == ReindexKind.SHIFT:
            return Reindex.shifted(self.amount + outer.amount)
        if self.kind == outer.kind == ReindexKind.SCALE:
            return Reindex.scaled(self.amount * outer.amount)
        return Reindex(ReindexKind.COMPOSITE, parts=(outer, self))

    def first_reaching(self, level: int) -> int:
        """
        Наименьшее u с θ(u) ≥ level.
        """
        u = 0
        while self(u) < level:
            u += 1
        return u

    def affine(self) -> Tuple[int, int, int]:
        """
        Представление θ(s) = k·s + c при s ≥ s0.

        Returns:
            (s0, k, c)
        """
        if self.kind == ReindexKind.IDENTITY:
            return 0, 1, 0
        if self.kind == ReindexKind.SHIFT:
            return 0, 1, self.amount
        if self.kind == ReindexKind.SCALE:
            return 0, self.amount, 0
        if self.kind == ReindexKind.TABLE:
            last = len(self.table) - 1
            return last, 1, self.table[last] - last
        outer, inner = self.parts
        s1, k1, c1 = outer.affine()
        s2, k2, c2 = inner.affine()
        start = max(s2, inner.first_reaching(s1))
        return start, k1 * k2, k1 * c2 + c1

    @property
    def description(self) -> str:
        if self.kind == ReindexKind.IDENTITY:
            return "s"
        if self.kind == ReindexKind.SHIFT:
            return f"s + {self.amount}"
        if self.kind == ReindexKind.SCALE:
            return f"{self.amount}s"
        if self.kind == ReindexKind.TABLE:
            return f"table{list(self.table)}"
        outer, inner = self.parts
        return f"({outer.description}) ∘ ({inner.description})"

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "description": self.description}


def reindexed_tail(tail: Optional[TailRule], theta: Reindex) -> Optional[TailRule]:
    """
    Хвостовое правило башни s ↦ X_{θ(s)}.

    Для θ(s) = k·s + c период p переходит в p / gcd(p, k), сдвиг
    умножается на число периодов исходной башни за новый период.
    """
    if tail is None:
        return None
    s0, k, _ = theta.affine()
    start = max(s0, theta.first_reaching(tail.start))
    if tail.kind == TailKind.EVENTUALLY_ZERO:
        return TailRule.zero(start)
    if tail.kind == TailKind.EVENTUALLY_CONSTANT:
        return TailRule.constant(start)
    period = tail.period // gcd(tail.period, k)
    return TailRule.periodic(
        start, period, tail.shift * (k * period // tail.period)
    )


class BiTower:
    """
    Двуиндексное семейство (s, q) ↦ D(s, q) со связками по обоим индексам.

    Attributes:
        theory (LevelTheory): Категория уровней
        window (int): Окно по s

    Raises:
        NonCommutingSquareError: Квадрат связок не коммутирует в окне
    """

    def __init__(
        self,
        theory: LevelTheory,
        level: Callable[[int, int], Any],
        s_bond: Callable[[int, int], Any],
        q_bond: Callable[[int, int], Any],
        window: Optional[int] = None,
        name: str = "",
    ):
        self.theory = theory
        self.level = level
        self.s_bond = s_bond
        self.q_bond = q_bond
        self.window = config.window if window is None else window
        self.name = name

    def check_squares(self, q_values: range) -> None:
        """
        D(s+1, q+1) → D(s, q) по двум путям для s < window, q из q_values.
        """
        theory = self.theory
        for s in range(self.window):
            for q in q_values:
                left = theory.compose(self.q_bond(s, q), self.s_bond(s, q + 1))
                right = theory.compose(self.s_bond(s, q), self.q_bond(s + 1, q))
                if not theory.equal(left, right):
                    raise NonCommutingSquareError(f"{self.name} ({s}, {q})")


class Diagonal(NamedTuple):
    tower: Tower
    chain: Tuple[Tuple[int, int], ...]


def diagonalize(
    family: BiTower, offset: int = 0, tail: Optional[TailRule] = None
) -> Diagonal:
    """
    Башня на кофинальной диагонали (s, q) = (n, n - offset).

    Связка D(n+1, n+1-offset) → D(n, n-offset) проходит сначала по s,
    затем по q.

    Args:
        family: Двуиндексное семейство
        offset: Сдвиг диагонали
        tail: Хвостовое правило диагонали, если известно

    Returns:
        Diagonal: башня и пройденная цепочка индексов

    Raises:
        NonCommutingSquareError: Квадраты связок не коммутируют
    """
    family.check_squares(range(-offset, family.window - offset + 1))
    theory = family.theory

    def level(n: int) -> Any:
        return family.level(n, n - offset)

    def bond(n: int) -> Any:
        q = n - offset
        return theory.compose(family.q_bond(n, q), family.s_bond(n, q + 1))

    tower = Tower(
        theory, level, bond, family.window, tail, f"diag {family.name}".strip()
    )
    chain = tuple((n, n - offset) for n in range(family.window + 1))
    logger.debug("диагональ %s: %s", family.name, chain[:3])
    return Diagonal(tower, chain)
