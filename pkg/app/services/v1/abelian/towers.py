"""
Модуль башен абелевых групп.

Включает в себя:
- TailRule: символическое продолжение башни за реализованное окно
- GroupTower: башня групп G_0 ← G_1 ← ... с окном и хвостом
- tower_lim / tower_lim1: предел и трихотомия для lim¹ с сертификатом
"""

import logging
from dataclasses import dataclass, replace
from math import gcd
from typing import Optional, Tuple

import sympy

from app.core.exceptions import TailMismatchError, WindowExhaustedError
from app.schemas.v1.verdicts import Lim1Status, Scope, TailKind

from .groups import FGAbelianGroup, GroupHom, image
from .matrix import IntMatrix
from .snf import hermite_basis, solve_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TailRule:
    """
    Хвостовое правило башни или прямой системы.

    Attributes:
        kind (TailKind): Вид правила
        start (int): Уровень, с которого правило действует
        period (int): Период p для periodic-shift
        shift (int): Сдвиг Σ^m за один период
        description (str): Описание для отчетов

    Example:
        >>> rule = TailRule.periodic(0, period=1, shift=2)
        >>> rule.reduce(3)
        (0, 6)
    """

    kind: TailKind
    start: int = 0
    period: int = 1
    shift: int = 0
    description: str = ""

    @classmethod
    def constant(cls, start: int, description: str = "") -> "TailRule":
        return cls(TailKind.EVENTUALLY_CONSTANT, start, description=description)

    @classmethod
    def zero(cls, start: int, description: str = "") -> "TailRule":
        return cls(TailKind.EVENTUALLY_ZERO, start, description=description)

    @classmethod
    def periodic(
        cls, start: int, period: int = 1, shift: int = 0, description: str = ""
    ) -> "TailRule":
        return cls(TailKind.PERIODIC_SHIFT, start, period, shift, description)

    @property
    def is_periodic(self) -> bool:
        return self.kind == TailKind.PERIODIC_SHIFT

    @property
    def base_end(self) -> int:
        """
        Последний уровень, который нужно реализовать, чтобы правило
        определяло все дальнейшие уровни и связки.
        """
        return self.start + self.period if self.is_periodic else self.start

    def reduce(self, s: int) -> Tuple[int, int]:
        """
        Базовый уровень и накопленный сдвиг для уровня s.

        Returns:
            (s0, сдвиг): level(s) = Σ^сдвиг level(s0), s0 < start + period
        """
        if not self.is_periodic or s < self.start:
            return s, 0
        k = (s - self.start) // self.period
        return s - k * self.period, k * self.shift

    def delayed(self, start: int) -> "TailRule":
        return replace(self, start=max(self.start, start))

    def vanishing_start(self, lo: int, hi: int, a: int, b: int) -> Optional[int]:
        """
        Первый уровень, начиная с которого степени [lo, hi] базовых уровней,
        сдвинутые правилом, не пересекают отрезок [a, b].

        Returns:
            Номер уровня или None, если правило сдвигов не делает
        """
        if not self.is_periodic or self.shift == 0:
            return None
        m = self.shift
        if m > 0:
            k = (b - lo) // m + 1 if b >= lo else 0
        else:
            k = (hi - a) // (-m) + 1 if hi >= a else 0
        return self.start + max(k, 0) * self.period

    def combine(self, other: Optional["TailRule"]) -> Optional["TailRule"]:
        """
        Общее правило для пары башен (например, источника и цели отображения).

        Returns:
            Правило, которому одновременно подчиняются обе башни, или None
        """
        if other is None:
            return None
        start = max(self.start, other.start)
        kinds = {self.kind, other.kind}
        if kinds == {TailKind.EVENTUALLY_ZERO}:
            return TailRule.zero(start)
        if TailKind.EVENTUALLY_ZERO in kinds:
            live = other if self.kind == TailKind.EVENTUALLY_ZERO else self
            return live.delayed(start)
        if kinds == {TailKind.EVENTUALLY_CONSTANT}:
            return TailRule.constant(start)
        p1, m1 = (self.period, self.shift) if self.is_periodic else (1, 0)
        p2, m2 = (other.period, other.shift) if other.is_periodic else (1, 0)
        period = p1 * p2 // gcd(p1, p2)
        shift = m1 * (period // p1)
        if shift != m2 * (period // p2):
            return None
        return TailRule.periodic(start, period, shift)

    def to_dict(self) -> dict:
        data = {"kind": self.kind.value, "start": self.start}
        if self.is_periodic:
            data.update(period=self.period, shift=self.shift)
        if self.description:
            data["description"] = self.description
        return data


@dataclass(frozen=True, eq=False)
class GroupTower:
    """
    Башня групп: bonds[s] действует из levels[s+1] в levels[s].

    Attributes:
        levels (Tuple[FGAbelianGroup, ...]): Реализованные уровни 0..W
        bonds (Tuple[GroupHom, ...]): Связующие отображения 0..W-1
        tail (Optional[TailRule]): Хвостовое правило; сдвиг для групп равен 0

    Raises:
        TailMismatchError: Правило расходится с реализованными уровнями
    """

    levels: Tuple[FGAbelianGroup, ...]
    bonds: Tuple[GroupHom, ...]
    tail: Optional[TailRule] = None

    def __post_init__(self) -> None:
        if len(self.bonds) != len(self.levels) - 1:
            raise TailMismatchError(len(self.bonds), "число связок")
        for s, bond in enumerate(self.bonds):
            if not (
                bond.source.same_presentation(self.levels[s + 1])
                and bond.target.same_presentation(self.levels[s])
            ):
                raise TailMismatchError(s, "связка не согласована с уровнями")
        if self.tail is not None:
            _check_tail(self, self.tail)

    @classmethod
    def constant(cls, group: FGAbelianGroup, window: int = 1) -> "GroupTower":
        identity = GroupHom.identity(group)
        return cls(
            (group,) * (window + 1), (identity,) * window, TailRule.constant(0)
        )

    @classmethod
    def from_endomorphism(
        cls, group: FGAbelianGroup, bond: GroupHom, window: int = 1
    ) -> "GroupTower":
        """
        Башня G ←φ G ←φ ... с периодическим хвостом.
        """
        return cls(
            (group,) * (window + 1), (bond,) * window, TailRule.periodic(0, 1, 0)
        )

    @property
    def window(self) -> int:
        return len(self.levels) - 1

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
            return GroupHom.zero(self.level(s + 1), self.level(s))
        if tail.kind == TailKind.EVENTUALLY_CONSTANT:
            return GroupHom.identity(self.levels[tail.start])
        base = self.bonds[tail.reduce(s)[0]]
        return GroupHom(self.level(s + 1), self.level(s), base.matrix)

    def composite(self, t: int, s: int) -> GroupHom:
        """
        Составное отображение level(t) → level(s) для t ≥ s.
        """
        result = GroupHom.identity(self.level(s))
        for u in range(s, t):
            step = self.bond(u)
            result = GroupHom(step.source, result.target, result.matrix @ step.matrix)
        return result

    def _require_tail(self, operation: str) -> TailRule:
        if self.tail is None:
            raise WindowExhaustedError(operation, self.window)
        return self.tail


def _check_tail(tower: GroupTower, tail: TailRule) -> None:
    window = tower.window
    rule = tail.kind.value
    if tail.base_end > window:
        raise TailMismatchError(tail.base_end, rule)
    if tail.kind == TailKind.EVENTUALLY_ZERO:
        for s in range(tail.start, window + 1):
            if not tower.levels[s].is_trivial():
                raise TailMismatchError(s, rule)
    elif tail.kind == TailKind.EVENTUALLY_CONSTANT:
        base = tower.levels[tail.start]
        for s in range(tail.start, window + 1):
            if not tower.levels[s].same_presentation(base):
                raise TailMismatchError(s, rule)
            if s < window and not tower.bonds[s] == GroupHom.identity(base):
                raise TailMismatchError(s, rule)
    else:
        if tail.shift != 0:
            raise TailMismatchError(tail.start, "сдвиг у башни групп")
        for s in range(tail.start, window - tail.period + 1):
            if not tower.levels[s + tail.period].same_presentation(tower.levels[s]):
                raise TailMismatchError(s + tail.period, rule)
            if s + tail.period < window and not (
                tower.bonds[s + tail.period].matrix == tower.bonds[s].matrix
            ):
                raise TailMismatchError(s + tail.period, rule)


@dataclass(frozen=True)
class LimResult:
    """
    Предел башни с сертификатом.

    Attributes:
        group (Optional[FGAbelianGroup]): lim или None, если не решено
        scope (Scope): Чем закрыто вычисление
        stable_from (Optional[int]): Уровень стабилизации
        certificate (str): Описание доказательства
    """

    group: Optional[FGAbelianGroup]
    scope: Scope
    stable_from: Optional[int]
    certificate: str

    def to_dict(self) -> dict:
        return {
            "group": None if self.group is None else self.group.to_dict(),
            "scope": self.scope.value,
            "stable_from": self.stable_from,
            "certificate": self.certificate,
        }


@dataclass(frozen=True)
class Lim1Result:
    status: Lim1Status
    scope: Scope
    witness: str

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "scope": self.scope.value,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class _PeriodAnalysis:
    """
    Предельные инварианты последовательности G ←φ G ←φ ...

    Attributes:
        stable_torsion (FGAbelianGroup): Устойчивый образ кручения T∞
        unit_rank (int): Ранг ∩ φ^k на свободной части
        det (int): Определитель φ на ранг-устойчивом образе
        stable_rank (int): Ранг этого образа
        steps (int): Число шагов до стабилизации кручения
    """

    stable_torsion: FGAbelianGroup
    unit_rank: int
    det: int
    stable_rank: int
    steps: int

    @property
    def mittag_leffler(self) -> bool:
        return self.stable_rank == 0 or abs(self.det) == 1


def _stable_torsion(
    standard: FGAbelianGroup, phi: IntMatrix, torsion_count: int
) -> Tuple[FGAbelianGroup, int]:
    generators = IntMatrix.identity(standard.generators).select_columns(
        range(torsion_count)
    )

    def subgroup(columns: IntMatrix) -> FGAbelianGroup:
        inclusion = GroupHom(FGAbelianGroup.free(columns.cols), standard, columns)
        return image(inclusion).group

    current = subgroup(generators)
    steps = 0
    while True:
        generators = phi @ generators
        following = subgroup(generators)
        steps += 1
        if following.order() == current.order():
            return current, steps
        current = following


def _unit_rank(matrix: IntMatrix) -> int:
    """
    Суммарная степень неприводимых множителей характеристического
    многочлена со свободным членом ±1.
    """
    if matrix.rows == 0:
        return 0
    x = sympy.Symbol("x")
    polynomial = sympy.Matrix(matrix.to_lists()).charpoly(x).as_expr()
    _, factors = sympy.factor_list(polynomial, x)
    total = 0
    for factor, multiplicity in factors:
        if abs(factor.subs(x, 0)) == 1:
            total += sympy.degree(factor, x) * multiplicity
    return int(total)


def analyze_endomorphism(phi: GroupHom) -> _PeriodAnalysis:
    """
    Разбирает эндоморфизм φ: G → G на кручение и свободную часть.
    """
    standard, to_standard, from_standard = phi.source.minimize()
    matrix = (to_standard @ phi @ from_standard).matrix
    torsion_count = len(standard.torsion)
    stable_torsion, steps = _stable_torsion(standard, matrix, torsion_count)

    free_block = matrix.select_rows(range(torsion_count, standard.generators))
    free_block = free_block.select_columns(range(torsion_count, standard.generators))
    rho = free_block.rows
    power = IntMatrix.identity(rho)
    for _ in range(rho):
        power = free_block @ power
    basis = hermite_basis(power)
    if basis.cols == 0:
        return _PeriodAnalysis(stable_torsion, 0, 1, 0, steps)
    restricted = solve_matrix(basis, free_block @ basis)
    return _PeriodAnalysis(
        stable_torsion,
        _unit_rank(restricted),
        restricted.determinant(),
        basis.cols,
        steps,
    )


def _period_map(tower: GroupTower) -> GroupHom:
    tail = tower.tail
    composite = tower.composite(tail.start + tail.period, tail.start)
    base = tower.level(tail.start)
    return GroupHom(base, base, composite.matrix)


def tower_lim(tower: GroupTower) -> LimResult:
    """
    Предел башни групп.

    Для периодического хвоста lim = Z^a ⊕ T∞, где T∞ устойчивый образ
    кручения, a ранг пересечения образов на свободной части.

    Args:
        tower: Башня с окном и, желательно, хвостовым правилом

    Returns:
        LimResult; без хвоста группа не определяется (unknown-within-window)

    Example:
        >>> Z = FGAbelianGroup.free(1)
        >>> tower_lim(GroupTower.constant(Z)).group.describe()
        'Z'
    """
    tail = tower.tail
    if tail is None:
        return LimResult(None, Scope.WINDOW, None, "предел не определен без хвоста")
    if tail.kind == TailKind.EVENTUALLY_ZERO:
        return LimResult(
            FGAbelianGroup.zero(), Scope.TAIL, tail.start, "нулевые уровни"
        )
    if tail.kind == TailKind.EVENTUALLY_CONSTANT:
        return LimResult(
            tower.level(tail.start), Scope.TAIL, tail.start, "постоянный хвост"
        )
    analysis = analyze_endomorphism(_period_map(tower))
    group = FGAbelianGroup.from_invariants(
        analysis.unit_rank, analysis.stable_torsion.torsion
    )
    logger.debug("lim периодической башни: %s", group.describe())
    return LimResult(
        group,
        Scope.TAIL,
        tail.start + analysis.steps * tail.period,
        f"периодический хвост: ранг {analysis.unit_rank}, "
        f"кручение {analysis.stable_torsion.describe()}",
    )


def tower_lim1(tower: GroupTower) -> Lim1Result:
    """
    Трихотомия для lim¹ через условие Миттаг-Леффлера.

    Example:
        >>> Z = FGAbelianGroup.free(1)
        >>> twice = GroupHom(Z, Z, IntMatrix.from_rows([[2]]))
        >>> tower_lim1(GroupTower.from_endomorphism(Z, twice)).status.value
        'nonzero'
    """
    tail = tower.tail
    if tail is None:
        return Lim1Result(Lim1Status.UNKNOWN, Scope.WINDOW, "нет хвостового правила")
    if tail.kind != TailKind.PERIODIC_SHIFT:
        return Lim1Result(
            Lim1Status.ZERO, Scope.TAIL, f"образы стабильны с уровня {tail.start}"
        )
    analysis = analyze_endomorphism(_period_map(tower))
    if analysis.mittag_leffler:
        return Lim1Result(
            Lim1Status.ZERO, Scope.TAIL, "образы стабилизируются (|det| = 1)"
        )
    return Lim1Result(
        Lim1Status.NONZERO,
        Scope.TAIL,
        f"образы строго убывают: |det| = {abs(analysis.det)} "
        f"на ранге {analysis.stable_rank}",
    )
