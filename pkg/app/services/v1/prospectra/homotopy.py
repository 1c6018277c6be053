"""
Модуль про-групп гомотопий и поуровневых сдвигов.

Включает в себя:
- pro_homotopy_group: про-группа π_k X = (H_k X_s)_s
- homotopy_map: отображение про-групп π_k f
- shift_pro / shift_pro_map: поуровневая надстройка Σ^m
- as_level_map: перенос переиндексации в источник
- zero_tower / zero_map: нулевой про-спектр и отображение 0 → Y
"""

from typing import Optional

from app.schemas.v1.verdicts import TailKind
from app.services.v1.abelian import TailRule
from app.services.v1.complexes import (ChainMap, FormalSpectrum, induced_map,
                                       shift, shift_map)
from app.services.v1.procat import (SPECTRA, ProMap, Reindex, Tower,
                                    homology_tower, map_levels, reindex)


def pro_homotopy_group(X: Tower, k: int) -> Tower:
    """
    Про-группа π_k X: гомологии уровней с индуцированными связками.

    Example:
        >>> from app.services.v1.complexes import sphere
        >>> from app.services.v1.procat import constant
        >>> pro_homotopy_group(constant(sphere(0)), 0).level(3).describe()
        'Z'
    """
    return homology_tower(X, k)


def _component_tail(f: ProMap) -> Optional[TailRule]:
    tail = f.tail
    if tail is None or tail.kind != TailKind.PERIODIC_SHIFT or tail.shift == 0:
        return tail
    return None


def homotopy_map(f: ProMap, k: int) -> ProMap:
    """
    π_k f: π_k X → π_k Y с той же переиндексацией.

    Компоненты со сдвигом m ≠ 0 в хвосте правила не имеют: в фиксированной
    степени они решаются хвостами про-групп.
    """
    return ProMap(
        pro_homotopy_group(f.source, k),
        pro_homotopy_group(f.target, k),
        lambda s: induced_map(f.component(s), k),
        f.reindex,
        _component_tail(f),
        f"π_{k}({f.name})",
        check=False,
    )


def shift_pro(X: Tower, m: int) -> Tower:
    """
    Поуровневая надстройка Σ^m X (при m < 0 петли Ω^{-m}).

    Хвостовое правило переходит без изменений: Σ^m коммутирует со сдвигом.
    """
    if m == 0:
        return X
    return map_levels(
        X,
        lambda level: shift(level, m),
        lambda bond: shift_map(bond, m),
        SPECTRA,
        X.tail,
        f"Σ^{m} {X.name}".strip(),
        X.window,
    )


def shift_pro_map(
    f: ProMap,
    m: int,
    source: Optional[Tower] = None,
    target: Optional[Tower] = None,
) -> ProMap:
    """
    Σ^m f между сдвинутыми башнями (их можно передать готовыми).
    """
    return ProMap(
        source or shift_pro(f.source, m),
        target or shift_pro(f.target, m),
        lambda s: shift_map(f.component(s), m),
        f.reindex,
        f.tail,
        f"Σ^{m} {f.name}".strip(),
        check=False,
        window=f.window,
    )


def as_level_map(f: ProMap) -> ProMap:
    """
    Тот же морфизм как отображение уровней: источник заменяется на
    башню s ↦ X_{θ(s)}, переиндексация становится тождественной.
    """
    if f.reindex == Reindex.identity():
        return f
    reindexed, _ = reindex(f.source, f.reindex)
    return ProMap(
        reindexed,
        f.target,
        f.component,
        tail=f.tail,
        name=f.name,
        check=False,
        window=min(f.window, reindexed.window) if reindexed.tail is None else f.window,
    )


def zero_tower(window: Optional[int] = None) -> Tower:
    zero = FormalSpectrum.zero()
    return Tower(
        SPECTRA,
        lambda s: zero,
        lambda s: ChainMap.identity(zero),
        window,
        TailRule.zero(0),
        "0",
    )


def zero_map(Y: Tower) -> ProMap:
    """
    Отображение 0 → Y. Нулевой хвост источника согласуется с любым
    хвостом цели.
    """
    source = zero_tower(Y.window)
    return ProMap(
        source,
        Y,
        lambda s: ChainMap.zero(FormalSpectrum.zero(), Y.level(s)),
        name=f"0 → {Y.name}",
        check=False,
    )
