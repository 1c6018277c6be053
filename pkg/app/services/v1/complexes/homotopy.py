"""
Модуль гомотопических классов отображений.

[X, Y]^r = [Σ^{-r} X, Y] вычисляется как H_0 комплекса Hom(Σ^{-r} X, Y).

Включает в себя:
- HomComplex: степени 1, 0, -1 комплекса Hom(A, B) в векторной форме
- HomotopyClasses: группа [X, Y]^r с классами, представителями и
  пред- и посткомпозицией
- homotopy_classes / homotopy_module: кешируемые точки входа
"""

import logging
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from app.core.exceptions import NotComposableError
from app.services.v1.abelian import (FGAbelianGroup, GroupHom, IntMatrix,
                                     Vector, unit_vector)

from .constructions import shift, shift_map
from .homology import Homology
from .spectrum import ChainMap, FormalSpectrum

logger = logging.getLogger(__name__)


class HomComplex:
    """
    Hom(A, B)_n = ∏_k Hom(A_k, B_{k+n}) для n = 1, 0, -1.

    Элемент степени n хранится вектором: блоки по степеням k, внутри блока
    матрица B_{k+n} × A_k по столбцам. Дифференциал
    (Dφ)_k = d_B φ_k - (-1)^n φ_{k-1} d_A, так что D h = d h + h d на
    гомотопиях и D φ = d φ - φ d на отображениях степени 0.

    Attributes:
        source (FormalSpectrum): A
        target (FormalSpectrum): B
        spectrum (FormalSpectrum): Комплекс Hom_1 → Hom_0 → Hom_{-1}
    """

    def __init__(self, source: FormalSpectrum, target: FormalSpectrum):
        self.source = source
        self.target = target
        self._layout: Dict[int, List[Tuple[int, int, int]]] = {
            n: self._blocks(n) for n in (1, 0, -1)
        }
        self.spectrum = FormalSpectrum.build(
            {n: self.dimension(n) for n in (1, 0, -1)},
            {1: self._differential(1), 0: self._differential(0)},
        )

    def _blocks(self, n: int) -> List[Tuple[int, int, int]]:
        # (k, offset, rows) для ненулевых блоков A_k → B_{k+n}
        layout, offset = [], 0
        for k in self.source.degrees:
            rows, cols = self.target.rank(k + n), self.source.rank(k)
            if rows and cols:
                layout.append((k, offset, rows))
                offset += rows * cols
        return layout

    def dimension(self, n: int) -> int:
        return sum(rows * self.source.rank(k) for k, _, rows in self._layout[n])

    def _offset(self, n: int, k: int) -> int:
        for degree, offset, _ in self._layout[n]:
            if degree == k:
                return offset
        return -1

    def _differential(self, n: int) -> IntMatrix:
        A, B = self.source, self.target
        sign = -1 if n % 2 == 0 else 1
        columns = []
        for k, offset, rows in self._layout[n]:
            d_b = B.d(k + n)
            d_a_next = A.d(k + 1)
            out_here = self._offset(n - 1, k)
            out_next = self._offset(n - 1, k + 1)
            for j in range(A.rank(k)):
                for i in range(rows):
                    image = [0] * self.dimension(n - 1)
                    # d_B · E_ij: столбец j равен столбцу i матрицы d_B
                    if out_here >= 0:
                        height = B.rank(k + n - 1)
                        for r in range(height):
                            image[out_here + j * height + r] += d_b[r, i]
                    # ±E_ij · d_A: строка i равна строке j матрицы d_A
                    if out_next >= 0:
                        for c in range(A.rank(k + 1)):
                            image[out_next + c * rows + i] += sign * d_a_next[j, c]
                    columns.append(image)
        return IntMatrix.from_columns(columns, self.dimension(n - 1))

    def vectorize(self, components: Dict[int, IntMatrix], n: int = 0) -> Vector:
        """
        Вектор элемента степени n по компонентам A_k → B_{k+n}.
        """
        vector = [0] * self.dimension(n)
        for k, offset, rows in self._layout[n]:
            matrix = components.get(k)
            if matrix is None:
                continue
            for j in range(matrix.cols):
                for i in range(rows):
                    vector[offset + j * rows + i] = matrix[i, j]
        return tuple(vector)

    def components(self, vector: Sequence[int], n: int = 0) -> Dict[int, IntMatrix]:
        result = {}
        for k, offset, rows in self._layout[n]:
            cols = self.source.rank(k)
            result[k] = IntMatrix.from_columns(
                [
                    vector[offset + j * rows : offset + (j + 1) * rows]
                    for j in range(cols)
                ],
                rows,
            )
        return result


class HomotopyClasses:
    """
    Группа [X, Y]^r гомотопических классов отображений Σ^{-r} X → Y.

    Attributes:
        source (FormalSpectrum): X
        target (FormalSpectrum): Y
        r (int): Степень
        shifted (FormalSpectrum): Σ^{-r} X
        group (FGAbelianGroup): [X, Y]^r в стандартной форме

    Example:
        >>> two = FGAbelianGroup.cyclic(2)
        >>> ZZ = FGAbelianGroup.free(1)
        >>> homotopy_classes(em_spectrum(two, 0), em_spectrum(ZZ, 0), 1).describe()
        'Z/2'
    """

    def __init__(self, source: FormalSpectrum, target: FormalSpectrum, r: int):
        self.source = source
        self.target = target
        self.r = r
        self.shifted = shift(source, -r)
        self.complex = HomComplex(self.shifted, target)
        self._homology = Homology(self.complex.spectrum, 0)
        self.group: FGAbelianGroup = self._homology.group

    def class_of(self, f: ChainMap) -> Vector:
        """
        Координаты класса отображения Σ^{-r} X → Y.

        Raises:
            NotComposableError: Источник или цель не совпадают
        """
        if f.source != self.shifted or f.target != self.target:
            raise NotComposableError("homotopy class")
        return self._homology.class_of(self.complex.vectorize(f.as_dict()))

    def representative(self, element: Sequence[int]) -> ChainMap:
        vector = self._homology.representative(element)
        return ChainMap.build(
            self.shifted, self.target, self.complex.components(vector)
        )

    def equal(self, f: ChainMap, g: ChainMap) -> bool:
        return self.group.is_zero(self.class_of(f - g))

    def is_null(self, f: ChainMap) -> bool:
        return self.group.is_zero(self.class_of(f))

    def precompose(self, u: ChainMap) -> Tuple["HomotopyClasses", GroupHom]:
        """
        u^*: [X, Y]^r → [X', Y]^r для u: X' → X.
        """
        other = homotopy_module(u.source, self.target, self.r)
        shifted_u = shift_map(u, -self.r)
        return other, self._induced(other, lambda f: f @ shifted_u)

    def postcompose(self, v: ChainMap) -> Tuple["HomotopyClasses", GroupHom]:
        """
        v_*: [X, Y]^r → [X, Y']^r для v: Y → Y'.
        """
        other = homotopy_module(self.source, v.target, self.r)
        return other, self._induced(other, lambda f: v @ f)

    def _induced(self, other: "HomotopyClasses", action) -> GroupHom:
        n = self.group.generators
        columns = [
            other.class_of(action(self.representative(unit_vector(n, j))))
            for j in range(n)
        ]
        return GroupHom(
            self.group,
            other.group,
            IntMatrix.from_columns(columns, other.group.generators),
        )


@lru_cache(maxsize=16384)
def homotopy_module(
    source: FormalSpectrum, target: FormalSpectrum, r: int
) -> HomotopyClasses:
    logger.debug("Hom-комплекс %s → %s в степени %s", source.name, target.name, r)
    return HomotopyClasses(source, target, r)


def homotopy_classes(
    source: FormalSpectrum, target: FormalSpectrum, r: int = 0
) -> FGAbelianGroup:
    """
    Группа [X, Y]^r = [Σ^{-r} X, Y].
    """
    return homotopy_module(source, target, r).group
