"""
Модуль формальных спектров.

Формальный спектр это ограниченный цепной комплекс свободных конечно
порожденных абелевых групп; его гомологии играют роль стабильных
гомотопических групп.

Включает в себя:
- FormalSpectrum: комплекс с проверкой d∘d = 0
- ChainMap: цепное отображение с проверкой коммутирования
- ChainHomotopy: цепная гомотопия f ≃ g
"""

from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple

from app.core.exceptions import (ChainMapError, DifferentialError,
                                 HomotopyError, NotComposableError)
from app.services.v1.abelian import IntMatrix, smith_normal_form


@dataclass(frozen=True)
class FormalSpectrum:
    """
    Ограниченный цепной комплекс свободных групп.

    Хранится в канонической обрезанной форме: крайние степени имеют
    ненулевой ранг, нулевой спектр имеет пустой список клеток.

    Attributes:
        lo (int): Нижняя степень
        cells (Tuple[int, ...]): Ранги C_lo, ..., C_hi
        diffs (Tuple[IntMatrix, ...]): diffs[i] = d_{lo+i+1}: C_{lo+i+1} → C_{lo+i}
        name (str): Имя для отчетов (не участвует в сравнении)

    Raises:
        DifferentialError: d_{k-1}·d_k ≠ 0 или размеры не согласованы

    Example:
        >>> X = FormalSpectrum.build({1: 1, 0: 1}, {1: IntMatrix.from_rows([[2]])})
        >>> X.lo, X.hi
        (0, 1)
    """

    lo: int
    cells: Tuple[int, ...]
    diffs: Tuple[IntMatrix, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if len(self.diffs) != max(len(self.cells) - 1, 0):
            raise DifferentialError(self.lo, "число дифференциалов")
        for i, d in enumerate(self.diffs):
            if d.shape != (self.cells[i], self.cells[i + 1]):
                raise DifferentialError(self.lo + i + 1, f"размер {d.shape}")
        for i in range(1, len(self.diffs)):
            if not (self.diffs[i - 1] @ self.diffs[i]).is_zero():
                raise DifferentialError(self.lo + i + 1)
        self._trim()

    def _trim(self) -> None:
        cells, diffs, lo = list(self.cells), list(self.diffs), self.lo
        while cells and cells[-1] == 0:
            cells.pop()
            if diffs:
                diffs.pop()
        while cells and cells[0] == 0:
            cells.pop(0)
            if diffs:
                diffs.pop(0)
            lo += 1
        if not cells:
            lo = 0
        object.__setattr__(self, "cells", tuple(cells))
        object.__setattr__(self, "diffs", tuple(diffs))
        object.__setattr__(self, "lo", lo)

    @classmethod
    def build(
        cls,
        cells: Mapping[int, int],
        diffs: Optional[Mapping[int, IntMatrix]] = None,
        name: str = "",
    ) -> "FormalSpectrum":
        """
        Строит спектр по словарям степень → ранг и степень → d_k.

        Отсутствующие дифференциалы считаются нулевыми.
        """
        diffs = dict(diffs or {})
        live = [k for k, rank in cells.items() if rank]
        if not live:
            for k, d in diffs.items():
                if not d.is_zero():
                    raise DifferentialError(k, "ненулевой d на нулевых клетках")
            return cls(0, (), (), name)
        lo, hi = min(live), max(live)
        ranks = tuple(cells.get(k, 0) for k in range(lo, hi + 1))
        for k, d in diffs.items():
            if not lo < k <= hi and not d.is_zero():
                raise DifferentialError(k, "дифференциал вне диапазона клеток")
        matrices = tuple(
            diffs.get(k, IntMatrix.zeros(ranks[k - 1 - lo], ranks[k - lo]))
            for k in range(lo + 1, hi + 1)
        )
        return cls(lo, ranks, matrices, name)

    @classmethod
    def zero(cls) -> "FormalSpectrum":
        return cls(0, (), ())

    @property
    def hi(self) -> int:
        return self.lo + len(self.cells) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def is_zero(self) -> bool:
        return not self.cells

    def rank(self, k: int) -> int:
        if self.lo <= k <= self.hi:
            return self.cells[k - self.lo]
        return 0

    def d(self, k: int) -> IntMatrix:
        """
        Дифференциал d_k: C_k → C_{k-1}.
        """
        if self.lo < k <= self.hi:
            return self.diffs[k - self.lo - 1]
        return IntMatrix.zeros(self.rank(k - 1), self.rank(k))

    def named(self, name: str) -> "FormalSpectrum":
        return FormalSpectrum(self.lo, self.cells, self.diffs, name)

    def to_dict(self) -> dict:
        return {
            "degrees": {str(k): self.rank(k) for k in self.degrees},
            "diff": {
                str(k): self.d(k).to_lists()
                for k in self.degrees
                if self.rank(k - 1) and not self.d(k).is_zero()
            },
        }


def degree_span(*spectra: FormalSpectrum) -> range:
    """
    Отрезок степеней, покрывающий все ненулевые клетки спектров.
    """
    live = [X for X in spectra if not X.is_zero()]
    if not live:
        return range(0)
    return range(min(X.lo for X in live), max(X.hi for X in live) + 1)


@dataclass(frozen=True, eq=False)
class ChainMap:
    """
    Цепное отображение f: X → Y.

    Attributes:
        source (FormalSpectrum): X
        target (FormalSpectrum): Y
        components (Tuple[Tuple[int, IntMatrix], ...]): Пары (k, f_k) для
            степеней, где обе группы ненулевые

    Raises:
        ChainMapError: Размер компоненты не согласован или d·f ≠ f·d
    """

    source: FormalSpectrum
    target: FormalSpectrum
    components: Tuple[Tuple[int, IntMatrix], ...]

    def __post_init__(self) -> None:
        table = dict(self.components)
        for k, matrix in table.items():
            if matrix.shape != (self.target.rank(k), self.source.rank(k)):
                raise ChainMapError(k, f"размер компоненты {matrix.shape}")
        cleaned = tuple(
            (k, table[k])
            for k in sorted(table)
            if self.target.rank(k) and self.source.rank(k)
        )
        object.__setattr__(self, "components", cleaned)
        for k in degree_span(self.source, self.target):
            left = self.target.d(k) @ self.component(k)
            right = self.component(k - 1) @ self.source.d(k)
            if left != right:
                raise ChainMapError(k)

    @classmethod
    def build(
        cls,
        source: FormalSpectrum,
        target: FormalSpectrum,
        components: Mapping[int, IntMatrix],
    ) -> "ChainMap":
        return cls(source, target, tuple(sorted(components.items())))

    @classmethod
    def identity(cls, X: FormalSpectrum) -> "ChainMap":
        return cls.build(X, X, {k: IntMatrix.identity(X.rank(k)) for k in X.degrees})

    @classmethod
    def zero(cls, source: FormalSpectrum, target: FormalSpectrum) -> "ChainMap":
        return cls(source, target, ())

    def component(self, k: int) -> IntMatrix:
        for degree, matrix in self.components:
            if degree == k:
                return matrix
        return IntMatrix.zeros(self.target.rank(k), self.source.rank(k))

    def as_dict(self) -> Dict[int, IntMatrix]:
        return dict(self.components)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """
        Композиция self ∘ other.
        """
        if other.target != self.source:
            raise NotComposableError("chain map compose")
        return ChainMap.build(
            other.source,
            self.target,
            {
                k: self.component(k) @ other.component(k)
                for k in degree_span(other.source, self.target)
            },
        )

    def _combine(self, other: "ChainMap", sign: int) -> "ChainMap":
        if other.source != self.source or other.target != self.target:
            raise NotComposableError("chain map add")
        return ChainMap.build(
            self.source,
            self.target,
            {
                k: self.component(k) + other.component(k).scale(sign)
                for k in degree_span(self.source, self.target)
            },
        )

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return self._combine(other, 1)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self._combine(other, -1)

    def __neg__(self) -> "ChainMap":
        return self.scale(-1)

    def scale(self, factor: int) -> "ChainMap":
        return ChainMap(
            self.source,
            self.target,
            tuple((k, m.scale(factor)) for k, m in self.components),
        )

    def is_zero(self) -> bool:
        return all(m.is_zero() for _, m in self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and all(
                self.component(k) == other.component(k)
                for k in degree_span(self.source, self.target)
            )
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target))

    def is_degreewise_injective_split(self) -> bool:
        """
        Расщепимая инъекция в каждой степени (кофибрация модели).
        """
        for k in self.source.degrees:
            form = smith_normal_form(self.component(k))
            if form.rank != self.source.rank(k) or any(d != 1 for d in form.factors):
                return False
        return True

    def is_degreewise_surjective(self) -> bool:
        """
        Сюръекция в каждой степени (расслоение модели).
        """
        for k in self.target.degrees:
            form = smith_normal_form(self.component(k))
            if form.rank != self.target.rank(k) or any(d != 1 for d in form.factors):
                return False
        return True


@dataclass(frozen=True, eq=False)
class ChainHomotopy:
    """
    Цепная гомотопия H между f и g: f - g = dH + Hd.

    Attributes:
        f (ChainMap): Первое отображение
        g (ChainMap): Второе отображение
        components (Tuple[Tuple[int, IntMatrix], ...]): H_k: X_k → Y_{k+1}

    Raises:
        HomotopyError: Тождество нарушено в некоторой степени
    """

    f: ChainMap
    g: ChainMap
    components: Tuple[Tuple[int, IntMatrix], ...]

    def __post_init__(self) -> None:
        X, Y = self.f.source, self.f.target
        for k in degree_span(X, Y):
            h_k = self.component(k)
            h_prev = self.component(k - 1)
            total = Y.d(k + 1) @ h_k + h_prev @ X.d(k)
            if total != self.f.component(k) - self.g.component(k):
                raise HomotopyError(k)

    def component(self, k: int) -> IntMatrix:
        for degree, matrix in self.components:
            if degree == k:
                return matrix
        return IntMatrix.zeros(self.f.target.rank(k + 1), self.f.source.rank(k))

