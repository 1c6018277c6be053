"""
Модуль встроенных про-спектров.

Включает в себя:
- counterexample: башня X_n = ⊕_{k=n}^{n+L} S^{2k} с периодическим хвостом
- PeriodicFamily: неусеченное периодическое семейство (формальный KU)
- ku: постниковская башня усечения формального KU
- cpn_tower: постоянный про-спектр CP^N
- naive_cohomology_colimit: наивный копредел E^d(X_n) как исчисление ростков
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple, Optional

from app.core.config import config
from app.services.v1.abelian import (FGAbelianGroup, GermClass,
                                     GermDirectSystem, IntMatrix, TailRule)
from app.services.v1.complexes import (ChainMap, FormalSpectrum, cpn,
                                       direct_sum, em_spectrum, postnikov,
                                       postnikov_map)
from app.services.v1.procat import SPECTRA, Tower, constant

logger = logging.getLogger(__name__)


def _wedge(n: int, width: int) -> FormalSpectrum:
    return FormalSpectrum.build(
        {2 * k: 1 for k in range(n, n + width + 1)}, name=f"X_{n}"
    )


def counterexample(width: Optional[int] = None, window: Optional[int] = None) -> Tower:
    """
    Башня X_n = S^{2n} ∨ ... ∨ S^{2n+2L} со связками-вложениями слагаемых.

    Конечная модель букета ⋁_{k≥n} S^{2k}: старшее слагаемое X_{n+1}
    отображается в ноль. Хвост periodic-shift(0, 1, 2): X_{n+1} = Σ² X_n.

    Args:
        width: L, число дополнительных сфер на уровне
        window: Реализованное окно

    Example:
        >>> counterexample(width=2).level(1).degrees
        range(2, 7)
    """
    width = config.counterexample_width if width is None else width

    def bond(n: int) -> ChainMap:
        return ChainMap.build(
            _wedge(n + 1, width),
            _wedge(n, width),
            {2 * k: IntMatrix.identity(1) for k in range(n + 1, n + width + 1)},
        )

    return Tower(
        SPECTRA,
        lambda n: _wedge(n, width),
        bond,
        window,
        TailRule.periodic(0, 1, 2),
        "counterexample",
    )


@dataclass(frozen=True)
class PeriodicFamily:
    """
    Спектр с π_k = A при k ≡ 0 (mod period) во всех степенях.

    Не ограничен ни сверху, ни снизу, поэтому как объект формальной модели
    существует только через усечения.

    Attributes:
        group (FGAbelianGroup): A
        period (int): Период
        name (str): Имя
    """

    group: FGAbelianGroup
    period: int = 2
    name: str = "KU"

    def homotopy(self, k: int) -> FGAbelianGroup:
        return self.group if k % self.period == 0 else FGAbelianGroup.zero()

    def degrees(self, lo: int, hi: int) -> range:
        first = lo + (-lo) % self.period
        return range(first, hi + 1, self.period)

    def truncate(self, lo: int, hi: int) -> FormalSpectrum:
        """
        ⊕ Σ^k HA по степеням k ∈ [lo, hi], k ≡ 0 (mod period).
        """
        pieces = [em_spectrum(self.group, k) for k in self.degrees(lo, hi)]
        if not pieces:
            return FormalSpectrum.zero()
        return direct_sum(*pieces).named(f"{self.name}[{lo}..{hi}]")

    def is_bounded_above(self) -> bool:
        return self.group.is_trivial()

    def postnikov_tower(self, w: Optional[int] = None) -> Tower:
        """
        Постниковская башня усечения K = truncate(-w, w): уровень s равен
        P_{s-w} K, с уровня 2w башня постоянна.
        """
        w = config.ku_window if w is None else w
        K = self.truncate(-w, w)
        identity = ChainMap.identity(K)

        def level(s: int) -> FormalSpectrum:
            return postnikov(K, s - w).spectrum

        def bond(s: int) -> ChainMap:
            return postnikov_map(identity, s + 1 - w, s - w)

        return Tower(
            SPECTRA,
            level,
            bond,
            max(config.window, 2 * w),
            TailRule.constant(2 * w),
            f"{self.name}({w})",
        )


FORMAL_KU = PeriodicFamily(FGAbelianGroup.free(1), 2, "KU")


def ku(w: Optional[int] = None) -> Tower:
    """
    Формальный KU: постниковская башня ⊕_{|2j|≤w} HZ[2j].
    """
    return FORMAL_KU.postnikov_tower(w)


def cpn_tower(n: int, window: Optional[int] = None) -> Tower:
    return constant(cpn(n), window, f"CP^{n}")


class NaiveColimit(NamedTuple):
    """
    Наивный копредел colim_n E^d(X_n) для X_n = ⋁_{k≥n} S^{2k}.

    Attributes:
        system: Система ростков ∏_{k≥n} π_{2k-d} E
        witness: Класс из единиц (None, если координаты нулевые)
        nonzero: Ненулевой ли класс в копределе
    """

    system: GermDirectSystem
    witness: Optional[GermClass]
    nonzero: bool

    def to_dict(self) -> dict:
        return {
            "levels": [self.system.level_description(n) for n in range(3)],
            "witness": None if self.witness is None else list(self.witness.cycle),
            "nonzero": self.nonzero,
        }


def naive_cohomology_colimit(family: PeriodicFamily, degree: int) -> NaiveColimit:
    """
    Копредел E^d(X_n) = ∏_{k≥n} π_{2k-d} E с ограничениями в качестве связок.

    Класс из единиц не обнуляется ни на каком уровне: росток на
    бесконечности ненулевой, хотя копредел обычных когомологий нулевой.
    """
    live = any(
        not family.homotopy(2 * k - degree).is_trivial()
        for k in range(family.period)
    )
    label = f"π_{{2k-{degree}}} {family.name}" if live else "0"
    system = GermDirectSystem(label)
    if not live:
        return NaiveColimit(system, None, False)
    witness = GermClass(
        0,
        (),
        tuple(
            0 if family.homotopy(2 * k - degree).is_trivial() else 1
            for k in range(family.period)
        ),
    )
    nonzero = not system.is_zero(witness)
    logger.info("наивный копредел в степени %s: росток ненулевой = %s", degree, nonzero)
    return NaiveColimit(system, witness, nonzero)
