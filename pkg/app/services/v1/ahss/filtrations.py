"""
Модуль башен по q: постниковские сечения и связные накрытия цели.

Включает в себя:
- section_tail: хвост башни s ↦ P_n Y_s или s ↦ Y_s⟨n⟩
- SectionFamily: семейство башен A^q или B^q со структурными отображениями
- postnikov_tower: A^q = P_{-q} Y поуровнево
- connective_tower: B^q = Y⟨-q⟩ поуровнево, слои B^q → B^{q+1}
- CofiberCheck / cofiber_checks: конус B^q → B^{q+1} это Σ^{-q} Hπ_{-q} Y
- cover_diagonal / cover_weak_equivalence: * → B как слабая эквивалентность
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from app.core.config import config
from app.core.exceptions import TailMismatchError
from app.schemas.v1.verdicts import TailKind
from app.services.v1.abelian import FGAbelianGroup, TailRule
from app.services.v1.complexes import (ChainMap, FormalSpectrum, cone,
                                       connected_cover, cover_inclusion,
                                       cover_map, homology, postnikov,
                                       postnikov_map)
from app.services.v1.procat import (SPECTRA, BiTower, ProMap, Tower,
                                    diagonalize, map_levels)
from app.services.v1.prospectra import (WeakEqCertificate, WeakEquivalenceSearch,
                                        zero_map)

logger = logging.getLogger(__name__)


def section_tail(Y: Tower, n: int, below: bool) -> Optional[TailRule]:
    """
    Хвост башни s ↦ P_n Y_s (below) или s ↦ Y_s⟨n⟩.

    Степень сечения фиксирована, поэтому сдвиг уровней вверх обнуляет
    P_n и превращает накрытие в весь уровень, сдвиг вниз наоборот.
    """
    tail = Y.tail
    if tail is None or tail.kind != TailKind.PERIODIC_SHIFT or tail.shift == 0:
        return tail
    p, m = tail.period, tail.shift
    vanishes = (m > 0) == below
    start = tail.start
    for b in range(tail.start, tail.start + p):
        span = SPECTRA.degree_range(Y.level(b))
        if span is None:
            continue
        lo, hi = span
        # при m > 0 ждем lo > n, при m < 0 ждем hi ≤ n
        if m > 0:
            gap = n + 1 - lo
        else:
            gap = hi - n
        steps = max(0, -(-gap // abs(m)))
        start = max(start, b + steps * p)
    return TailRule.zero(start) if vanishes else TailRule.periodic(start, p, m)


def _levelwise(
    Y: Tower,
    on_level: Callable[[FormalSpectrum], FormalSpectrum],
    on_bond: Callable[[ChainMap], ChainMap],
    tail: Optional[TailRule],
    name: str,
) -> Tower:
    window = Y.window if tail is None else max(Y.window, tail.base_end)
    try:
        return map_levels(Y, on_level, on_bond, SPECTRA, tail, name, window)
    except TailMismatchError:
        logger.debug("хвост %s для %s не подтвердился", tail, name)
        return map_levels(Y, on_level, on_bond, SPECTRA, None, name)


def postnikov_stage(Y: Tower, q: int) -> Tower:
    """
    A^q: поуровневое сечение P_{-q} Y_s.
    """
    n = -q
    return _levelwise(
        Y,
        lambda X: postnikov(X, n).spectrum,
        lambda f: postnikov_map(f, n),
        section_tail(Y, n, below=True),
        f"P_{n}({Y.name})",
    )


def connective_stage(Y: Tower, q: int) -> Tower:
    """
    B^q: поуровневое связное накрытие Y_s⟨-q⟩ (степени > -q).
    """
    n = -q
    return _levelwise(
        Y,
        lambda X: connected_cover(X, n).spectrum,
        lambda f: cover_map(f, n),
        section_tail(Y, n, below=False),
        f"{Y.name}⟨{n}⟩",
    )


@dataclass(frozen=True)
class SectionFamily:
    """
    Семейство башен по q со структурными отображениями.

    Attributes:
        target (Tower): Y
        q_range (Tuple[int, int]): Окно по q
        stages (Dict[int, Tower]): q ↦ A^q или B^q
        maps (Dict[int, ProMap]): Отображения между соседними стадиями;
            для сечений A^{q-1} → A^q, для накрытий B^q → B^{q+1}
    """

    target: Tower
    q_range: Tuple[int, int]
    stages: Dict[int, Tower]
    maps: Dict[int, ProMap]

    def stage(self, q: int) -> Tower:
        return self.stages[q]

    def to_dict(self, upto: int = 2) -> dict:
        return {
            "target": self.target.name,
            "q_range": list(self.q_range),
            "stages": {
                str(q): tower.describe(upto) for q, tower in sorted(self.stages.items())
            },
        }


def postnikov_tower(
    Y: Tower, q_range: Optional[Tuple[int, int]] = None
) -> SectionFamily:
    """
    Постниковская башня цели: A^q = P_{-q} Y и A^{q-1} → A^q.

    Example:
        >>> from app.services.v1.procat import constant
        >>> from app.services.v1.complexes import em_spectrum
        >>> HZ = em_spectrum(FGAbelianGroup.free(1), 0)
        >>> family = postnikov_tower(constant(HZ, 2), (-1, 1))
        >>> family.stage(-1).level(0) == HZ, family.stage(1).level(0).is_zero()
        (True, True)
    """
    low, high = q_range or config.q_bounds
    stages = {q: postnikov_stage(Y, q) for q in range(low - 1, high + 1)}
    maps = {
        q: ProMap(
            stages[q - 1],
            stages[q],
            lambda s, n=-q: postnikov_map(ChainMap.identity(Y.level(s)), n + 1, n),
            name=f"A^{q - 1} → A^{q}",
            check=False,
        )
        for q in range(low, high + 1)
    }
    del stages[low - 1]
    logger.debug("постниковская башня %s: q ∈ [%s, %s]", Y.name, low, high)
    return SectionFamily(Y, (low, high), stages, maps)


def connective_tower(
    Y: Tower, q_range: Optional[Tuple[int, int]] = None
) -> SectionFamily:
    """
    Башня связных накрытий: B^q = Y⟨-q⟩ и вложения B^q → B^{q+1}.

    Example:
        >>> from app.services.v1.procat import constant
        >>> from app.services.v1.complexes import em_spectrum
        >>> HZ = em_spectrum(FGAbelianGroup.free(1), 0)
        >>> family = connective_tower(constant(HZ, 2), (-1, 1))
        >>> family.stage(0).level(0).is_zero(), family.stage(1).level(0) == HZ
        (True, True)
    """
    low, high = q_range or config.q_bounds
    stages = {q: connective_stage(Y, q) for q in range(low, high + 2)}
    maps = {
        q: ProMap(
            stages[q],
            stages[q + 1],
            lambda s, n=-q: cover_inclusion(Y.level(s), n, n - 1),
            name=f"B^{q} → B^{q + 1}",
            check=False,
        )
        for q in range(low, high + 1)
    }
    del stages[high + 1]
    logger.debug("башня накрытий %s: q ∈ [%s, %s]", Y.name, low, high)
    return SectionFamily(Y, (low, high), stages, maps)


@dataclass(frozen=True)
class CofiberCheck:
    """
    Конус B^q_s → B^{q+1}_s на одном уровне.

    Attributes:
        q (int): Индекс стадии
        level (int): Уровень s
        concentrated (bool): Гомологии сосредоточены в степени -q
        group (FGAbelianGroup): H_{-q} конуса
        expected (FGAbelianGroup): π_{-q} Y_s
    """

    q: int
    level: int
    concentrated: bool
    group: FGAbelianGroup
    expected: FGAbelianGroup

    @property
    def passed(self) -> bool:
        return self.concentrated and self.group == self.expected

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "level": self.level,
            "group": self.group.describe(),
            "expected": self.expected.describe(),
            "passed": self.passed,
        }


def cofiber_checks(
    Y: Tower,
    q_range: Optional[Tuple[int, int]] = None,
    window: Optional[int] = None,
) -> List[CofiberCheck]:
    """
    Поуровневая проверка: конус B^q → B^{q+1} есть Σ^{-q} Hπ_{-q} Y.
    """
    low, high = q_range or config.q_bounds
    top = min(Y.window, config.window if window is None else window)
    checks = []
    for s in range(top + 1):
        X = Y.level(s)
        for q in range(low, high + 1):
            C = cone(cover_inclusion(X, -q, -q - 1)).spectrum
            concentrated = all(
                homology(C, k).is_trivial() for k in C.degrees if k != -q
            )
            checks.append(
                CofiberCheck(q, s, concentrated, homology(C, -q), homology(X, -q))
            )
    failures = [c for c in checks if not c.passed]
    if failures:
        logger.warning("❌ слои накрытий %s: %s", Y.name, failures[:3])
    return checks


def cover_diagonal_tail(Y: Tower) -> Optional[TailRule]:
    """
    Хвост диагонали s ↦ Y_s⟨s⟩.
    """
    tail = Y.tail
    if tail is None:
        return None
    if tail.kind == TailKind.EVENTUALLY_ZERO:
        return TailRule.zero(tail.start)
    if tail.kind == TailKind.EVENTUALLY_CONSTANT:
        span = SPECTRA.degree_range(Y.level(tail.start))
        start = tail.start if span is None else max(tail.start, span[1])
        return TailRule.zero(start)
    p, m = tail.period, tail.shift
    if m == p:
        return TailRule.periodic(tail.start, p, m)
    start = tail.start
    for b in range(tail.start, tail.start + p):
        span = SPECTRA.degree_range(Y.level(b))
        if span is None:
            continue
        lo, hi = span
        # m < p: hi + j·m ≤ b + j·p; m > p: lo + j·m ≥ b + j·p + 1
        gap = hi - b if m < p else b + 1 - lo
        steps = max(0, -(-gap // abs(p - m)))
        start = max(start, b + steps * p)
    if m < p:
        return TailRule.zero(start)
    return TailRule.periodic(start, p, m)


def cover_diagonal(Y: Tower) -> Tower:
    """
    Диагональ B(s) = Y_s⟨s⟩ двуиндексного семейства накрытий, модель
    lim_q B^q.
    """
    tail = cover_diagonal_tail(Y)
    family = BiTower(
        SPECTRA,
        lambda s, n: connected_cover(Y.level(s), n).spectrum,
        lambda s, n: cover_map(Y.bond(s), n),
        lambda s, n: cover_inclusion(Y.level(s), n + 1, n),
        Y.window if tail is None else max(Y.window, tail.base_end),
        f"B({Y.name})",
    )
    try:
        return diagonalize(family, 0, tail).tower
    except TailMismatchError:
        logger.debug("хвост диагонали накрытий %s не подтвердился", Y.name)
        return diagonalize(family, 0).tower


def cover_weak_equivalence(
    Y: Tower,
    n_range: Optional[Tuple[int, int]] = None,
    window: Optional[int] = None,
) -> WeakEqCertificate:
    """
    Проверка, что * → lim_q B^q есть π*-слабая эквивалентность.
    """
    B = cover_diagonal(Y)
    return WeakEquivalenceSearch(window).is_pi_weak_equivalence(zero_map(B), n_range)
