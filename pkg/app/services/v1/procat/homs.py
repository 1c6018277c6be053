"""
Модуль групп морфизмов про-объектов и инвариантов башен.

Включает в себя:
- fixed_degree_tail: правило башни инвариантов фиксированной степени
- homology_tower: башня групп H_k уровней
- tower_invariants: lim и lim¹ башни (для спектров по степеням)
- ProHom / pro_hom: lim_s colim_t Hom(X_t, Y_s)
- hom_colimit: colim_t Hom(X_t, T) для постоянной цели
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from app.schemas.v1.verdicts import Lim1Status, Scope, TailKind
from app.services.v1.abelian import (ColimClass, Colimit, FGAbelianGroup,
                                     FGDirectSystem, GroupHom, GroupTower,
                                     IntMatrix, Lim1Result, TailRule,
                                     tower_lim, tower_lim1, unit_vector)
from app.services.v1.complexes import homology, induced_map

from .theories import GROUPS
from .towers import Tower, as_group_tower, map_levels

logger = logging.getLogger(__name__)


def fixed_degree_tail(tower: Tower, a: int, b: int) -> Optional[TailRule]:
    """
    Правило башни инвариантов, зависящих от степеней [a, b] уровня.

    Постоянное и нулевое правила переходят без изменений, периодическое
    без сдвига сохраняет период, сдвиг m ≠ 0 выводит степени базовых
    уровней за [a, b], и инвариант становится нулевым.
    """
    tail = tower.tail
    if tail is None or tail.kind != TailKind.PERIODIC_SHIFT:
        return tail
    if tail.shift == 0:
        return TailRule.periodic(tail.start, tail.period, 0)
    ranges = [
        tower.theory.degree_range(tower.level(s))
        for s in range(tail.start, tail.start + tail.period)
    ]
    ranges = [r for r in ranges if r is not None]
    if not ranges:
        return TailRule.zero(tail.start)
    lo = min(r[0] for r in ranges)
    hi = max(r[1] for r in ranges)
    return TailRule.zero(tail.vanishing_start(lo, hi, a, b))


def homology_tower(tower: Tower, k: int) -> Tower:
    """
    Башня групп s ↦ H_k(X_s) с индуцированными связками.
    """
    tail = fixed_degree_tail(tower, k, k)
    window = tower.window if tail is None else max(tower.window, tail.base_end)
    return map_levels(
        tower,
        lambda X: homology(X, k),
        lambda f: induced_map(f, k),
        GROUPS,
        tail,
        f"H_{k}({tower.name})",
        window,
    )


def _invariant(
    tower: Tower,
) -> Optional[Tuple[Tuple[int, Tuple[int, ...]], Lim1Status]]:
    if tower.tail is None:
        return None
    group_tower = as_group_tower(tower)
    lim = tower_lim(group_tower).group
    if lim is None:
        return None
    return (lim.rank, lim.torsion), tower_lim1(group_tower).status


def tower_invariants(tower: Tower, degrees: range = range(0)) -> Dict[int, Any]:
    """
    lim и lim¹ башни; для спектров по гомологиям степеней из degrees.

    Про-изоморфные башни имеют совпадающие инварианты, поэтому
    расхождение доказывает отсутствие про-изоморфизма.

    Returns:
        Степень (0 для групп) ↦ ((ранг, кручение) lim, статус lim¹);
        нерешенные степени опущены
    """
    if tower.theory is GROUPS:
        value = _invariant(tower)
        return {} if value is None else {0: value}
    result = {}
    for k in degrees:
        value = _invariant(homology_tower(tower, k))
        if value is not None:
            result[k] = value
    return result


@dataclass(frozen=True)
class ProHom:
    """
    Группа морфизмов про-объектов с областью доказательства.

    Attributes:
        group (Optional[FGAbelianGroup]): lim_s colim_t Hom(X_t, Y_s) или None
        scope (Scope): Чем закрыто вычисление
        colimits (Tuple[Colimit, ...]): colim_t Hom(X_t, Y_s) по s окна
        lim1 (Optional[Lim1Result]): lim¹ башни копределов
        certificate (str): Описание
    """

    group: Optional[FGAbelianGroup]
    scope: Scope
    colimits: Tuple[Colimit, ...]
    lim1: Optional[Lim1Result]
    certificate: str

    def class_is_zero(self, s: int, t: int, element: Tuple[int, ...]) -> bool:
        """
        Равен ли нулю росток элемента Hom(X_t, Y_s) в colim_t.
        """
        return self.colimits[s].is_zero(ColimClass(t, tuple(element)))

    def to_dict(self) -> dict:
        return {
            "group": None if self.group is None else self.group.to_dict(),
            "scope": self.scope.value,
            "lim1": None if self.lim1 is None else self.lim1.to_dict(),
            "certificate": self.certificate,
        }


def _hom_tail(X: Tower, target: Any) -> Optional[TailRule]:
    tail = X.tail
    if tail is None or tail.kind != TailKind.PERIODIC_SHIFT or tail.shift == 0:
        return fixed_degree_tail(X, 0, 0)
    span = X.theory.degree_range(target)
    if span is None:
        return TailRule.zero(tail.start)
    return fixed_degree_tail(X, *span)


def _hom_system(X: Tower, target: Any) -> Tuple[FGDirectSystem, List[Any]]:
    theory = X.theory
    tail = _hom_tail(X, target)
    top = X.window if tail is None else max(X.window, tail.base_end)
    modules = [theory.hom_module(X.level(t), target) for t in range(top + 1)]
    bonds = tuple(
        modules[t].precompose(X.bond(t))[1] for t in range(top)
    )
    system = FGDirectSystem(tuple(m.group for m in modules), bonds, tail)
    return system, modules


def hom_colimit(X: Tower, target: Any) -> Colimit:
    """
    Копредел colim_t Hom(X_t, T) для постоянной цели T.

    Совпадает с pro_hom(X, constant(T)).colimits[0], но не строит
    предел по уровням цели.
    """
    system, _ = _hom_system(X, target)
    return Colimit(system)


def _lim_tail(Y: Tower) -> Optional[TailRule]:
    tail = Y.tail
    if tail is None or (tail.kind == TailKind.PERIODIC_SHIFT and tail.shift != 0):
        return None
    return tail


def pro_hom(X: Tower, Y: Tower) -> ProHom:
    """
    Группа Hom(X, Y) = lim_s colim_t Hom(X_t, Y_s).

    Для спектров Hom берется в гомотопической категории ([X_t, Y_s]).
    Копределы по t решаются хвостом X, предел по s хвостом Y; без
    хвостов ответ "unknown-within-window".

    Args:
        X: Башня-источник
        Y: Башня-цель той же теории

    Returns:
        ProHom

    Example:
        >>> from app.services.v1.complexes import sphere
        >>> from .towers import constant
        >>> pro_hom(constant(sphere(0)), constant(sphere(0))).group.describe()
        'Z'
    """
    tail = _lim_tail(Y)
    top = Y.window if tail is None else max(Y.window, tail.base_end)
    modules_by_level = []
    colimits = []
    for s in range(top + 1):
        system, modules = _hom_system(X, Y.level(s))
        modules_by_level.append(modules)
        colimits.append(Colimit(system))
    colimits_tuple = tuple(colimits)
    undecided = [s for s, c in enumerate(colimits) if c.group is None]
    if tail is None or undecided:
        reason = (
            "нет хвостового правила цели"
            if tail is None
            else f"копредел на уровне {undecided[0]} не вычислен"
        )
        logger.info("❓ pro_hom: %s", reason)
        return ProHom(None, Scope.WINDOW, colimits_tuple, None, reason)

    levels = tuple(c.group for c in colimits)
    bonds = []
    for s in range(top):
        source, target = colimits[s + 1], colimits[s]
        columns = []
        for i in range(source.group.generators):
            cls = source.representative(unit_vector(source.group.generators, i))
            _, post = modules_by_level[s + 1][cls.level].postcompose(Y.bond(s))
            image = ColimClass(cls.level, post.apply(cls.element))
            columns.append(target.coordinates(image))
        bonds.append(
            GroupHom(
                source.group,
                target.group,
                IntMatrix.from_columns(columns, target.group.generators),
            )
        )
    group_tower = GroupTower(levels, tuple(bonds), tail)
    lim = tower_lim(group_tower)
    lim1 = tower_lim1(group_tower)
    logger.info("✅ pro_hom: %s (%s)", lim.group.describe(), lim.scope.value)
    return ProHom(lim.group, lim.scope, colimits_tuple, lim1, lim.certificate)
