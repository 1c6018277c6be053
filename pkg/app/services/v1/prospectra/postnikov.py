"""
Модуль постниковской замены и ограниченности сверху.

Включает в себя:
- PostnikovReplacement: PX_s = P_{s-offset} X_s с каноническим X → PX
- postnikov_replacement: диагональ двуиндексного семейства P_n X_s
- BoundedAboveReport / is_essentially_bounded_above: проверка π*-фибрантности
- EssentiallyConstant / essentially_constant: постоянный хвост как
  про-изоморфизм с постоянным про-спектром
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple, Union

from app.core.config import config
from app.core.exceptions import TailMismatchError
from app.schemas.v1.verdicts import Scope, TailKind, Verdict
from app.services.v1.abelian import TailRule
from app.services.v1.complexes import (ChainMap, FormalSpectrum, postnikov,
                                       postnikov_map)
from app.services.v1.procat import (SPECTRA, BiTower, ProIsoCertificate,
                                    ProMap, Tower, constant, diagonalize,
                                    is_pro_isomorphism)

from .builtins import PeriodicFamily

logger = logging.getLogger(__name__)

FIBRANCY_NOTE = (
    "уровни формальной модели фибрантны, поэтому π*-фибрантность сводится "
    "к существенной ограниченности сверху"
)


class PostnikovReplacement(NamedTuple):
    """
    Постниковская замена про-спектра.

    Attributes:
        tower (Tower): PX
        unit (ProMap): Каноническое отображение X → PX
        chain (Tuple[Tuple[int, int], ...]): Пройденные индексы (s, n)
    """

    tower: Tower
    unit: ProMap
    chain: Tuple[Tuple[int, int], ...]


def _floor(X: FormalSpectrum) -> Optional[int]:
    span = SPECTRA.degree_range(X)
    return None if span is None else span[0]


def _ceiling(X: FormalSpectrum) -> Optional[int]:
    span = SPECTRA.degree_range(X)
    return None if span is None else span[1]


def replacement_tail(X: Tower, offset: int) -> Optional[TailRule]:
    """
    Хвост PX по хвосту X.

    Для periodic-shift(start, p, m): при m = p усечение сдвигается вместе
    с уровнем; при m > p нижняя степень X_s обгоняет s - offset и PX
    становится нулем; при m < p усечение обгоняет верхнюю степень и PX
    совпадает с X.
    """
    tail = X.tail
    if tail is None:
        return None
    if tail.kind == TailKind.EVENTUALLY_ZERO:
        return TailRule.zero(tail.start)
    if tail.kind == TailKind.EVENTUALLY_CONSTANT:
        top = _ceiling(X.level(tail.start))
        start = tail.start if top is None else max(tail.start, top + offset)
        return TailRule.constant(start)
    p, m = tail.period, tail.shift
    if m == p:
        return TailRule.periodic(tail.start, p, m)
    bases = range(tail.start, tail.start + p)
    if m > p:
        start = tail.start
        for b in bases:
            lo = _floor(X.level(b))
            if lo is None:
                continue
            steps = max(0, (b - offset - lo) // (m - p) + 1)
            start = max(start, b + steps * p)
        return TailRule.zero(start)
    start = tail.start
    for b in bases:
        hi = _ceiling(X.level(b))
        if hi is None:
            continue
        # нужно hi + j·m ≤ b + j·p - offset
        steps = max(0, -(-(hi - b + offset) // (p - m)))
        start = max(start, b + steps * p)
    return TailRule.periodic(start, p, m)


def postnikov_replacement(
    X: Tower, offset: Optional[int] = None
) -> PostnikovReplacement:
    """
    Фибрантная замена PX_s = P_{s-offset} X_s.

    Диагонализует семейство (s, n) ↦ P_n X_s со связками P_n(bond) по s и
    проекциями P_{n+1} → P_n по n. Уровни ограничены сверху, а X → PX
    π*-слабая эквивалентность.

    Args:
        X: Про-спектр
        offset: Сдвиг диагонали (по умолчанию из конфигурации)

    Returns:
        PostnikovReplacement

    Example:
        >>> from app.services.v1.complexes import em_spectrum
        >>> from app.services.v1.abelian import FGAbelianGroup
        >>> HZ = em_spectrum(FGAbelianGroup.free(1), 0)
        >>> postnikov_replacement(constant(HZ)).tower.level(5) == HZ
        True
    """
    offset = config.postnikov_offset if offset is None else offset
    tail = replacement_tail(X, offset)
    family = BiTower(
        SPECTRA,
        lambda s, n: postnikov(X.level(s), n).spectrum,
        lambda s, n: postnikov_map(X.bond(s), n),
        lambda s, n: postnikov_map(ChainMap.identity(X.level(s)), n + 1, n),
        X.window if tail is None else max(X.window, tail.base_end),
        f"P({X.name})",
    )
    try:
        diagonal = diagonalize(family, offset, tail)
    except TailMismatchError:
        logger.debug("хвост %s для P(%s) не подтвердился", tail, X.name)
        tail = None
        diagonal = diagonalize(family, offset)
    tower = diagonal.tower
    unit = ProMap(
        X,
        tower,
        lambda s: postnikov(X.level(s), s - offset).projection,
        tail=tail if tail is not None and not tail.is_periodic else None,
        name=f"{X.name} → P{X.name}",
        window=tower.window,
    )
    logger.info(
        "📐 постниковская замена %s: окно %s, хвост %s",
        X.name,
        tower.window,
        None if tail is None else tail.to_dict(),
    )
    return PostnikovReplacement(tower, unit, diagonal.chain)


@dataclass(frozen=True)
class BoundedAboveReport:
    """
    Существенная ограниченность сверху.

    Attributes:
        verdict (Verdict): Итог
        scope (Scope): Чем закрыт итог
        bounds (Tuple[Optional[int], ...]): Верхняя степень уровней окна
            (None для нулевого уровня)
        note (str): Пояснение
    """

    verdict: Verdict
    scope: Scope
    bounds: Tuple[Optional[int], ...] = ()
    note: str = FIBRANCY_NOTE

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "scope": self.scope.value,
            "bounds": list(self.bounds),
            "note": self.note,
        }


def is_essentially_bounded_above(
    X: Union[Tower, PeriodicFamily], window: Optional[int] = None
) -> BoundedAboveReport:
    """
    Проверка π*-фибрантности: каждый уровень ограничен сверху.

    Уровни башни конечны, так что для Tower проверка всегда успешна;
    окно только определяет, насколько далеко выписаны границы. Неусеченное
    периодическое семейство с ненулевой группой сверху не ограничено.
    """
    if isinstance(X, PeriodicFamily):
        if X.is_bounded_above():
            return BoundedAboveReport(Verdict.CERTIFIED, Scope.TAIL)
        return BoundedAboveReport(
            Verdict.REFUTED,
            Scope.TAIL,
            note=f"π_k {X.name} ≠ 0 для сколь угодно больших k",
        )
    window = config.window if window is None else window
    top = min(X.window, window)
    bounds = tuple(_ceiling(X.level(s)) for s in range(top + 1))
    scope = Scope.WINDOW if X.tail is None else Scope.TAIL
    logger.debug("ограниченность сверху %s: %s", X.name, bounds)
    return BoundedAboveReport(Verdict.CERTIFIED, scope, bounds)


class EssentiallyConstant(NamedTuple):
    """
    Про-изоморфизм постоянного про-спектра в башню.

    Attributes:
        value (Optional[FormalSpectrum]): Значение на хвосте
        comparison (Optional[ProMap]): const(value) → Y
        certificate (Optional[ProIsoCertificate]): Итог проверки
    """

    value: Optional[FormalSpectrum]
    comparison: Optional[ProMap]
    certificate: Optional[ProIsoCertificate]

    @property
    def certified(self) -> bool:
        return self.certificate is not None and self.certificate.certified


def essentially_constant(Y: Tower) -> EssentiallyConstant:
    """
    Башня с постоянным (или нулевым) хвостом про-изоморфна постоянной.

    Компоненты const(Y_c) → Y: композиции связок Y_c → Y_s при s ≤ c и
    тождественные отображения при s ≥ c.
    """
    tail = Y.tail
    if tail is None or tail.is_periodic:
        return EssentiallyConstant(None, None, None)
    c = tail.start
    value = Y.level(c)
    source = constant(value, Y.window, f"const {Y.name}".strip())
    comparison = ProMap(
        source,
        Y,
        lambda s: Y.composite(c, s) if s <= c else SPECTRA.identity(value),
        tail=TailRule.constant(c),
        name=f"const → {Y.name}",
    )
    certificate = is_pro_isomorphism(comparison)
    return EssentiallyConstant(value, comparison, certificate)
