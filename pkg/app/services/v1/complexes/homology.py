"""
Модуль гомологий формальных спектров.

Включает в себя:
- Homology: H_k с базой циклов, координатами классов и представителями
- homology: группа H_k(X) в стандартном представлении
- induced_map: гомоморфизм H_k(f)
"""

from functools import lru_cache
from typing import Sequence

from app.core.exceptions import ChainMapError
from app.services.v1.abelian import (FGAbelianGroup, GroupHom, IntMatrix,
                                     Vector, kernel_basis, solve, solve_matrix,
                                     unit_vector)

from .spectrum import ChainMap, FormalSpectrum


class Homology:
    """
    H_k(X) = Z_k / B_k в стандартном представлении.

    Attributes:
        spectrum (FormalSpectrum): X
        degree (int): k
        cycles (IntMatrix): База Z_k в столбцах (C_k × z)
        group (FGAbelianGroup): Стандартная форма Z^r ⊕ ⊕ Z/d_i
    """

    def __init__(self, spectrum: FormalSpectrum, degree: int):
        self.spectrum = spectrum
        self.degree = degree
        self.cycles = kernel_basis(spectrum.d(degree))
        boundaries = spectrum.d(degree + 1)
        in_cycles = solve_matrix(self.cycles, boundaries)
        # границы всегда лежат в циклах, иначе d∘d ≠ 0
        raw = FGAbelianGroup(in_cycles.T)
        self.group, self._to_standard, self._from_standard = raw.minimize()

    def class_of(self, cycle: Sequence[int]) -> Vector:
        """
        Канонические координаты класса цикла.

        Raises:
            ChainMapError: Вектор не является циклом
        """
        coordinates = solve(self.cycles, cycle)
        if coordinates is None:
            raise ChainMapError(self.degree, "вектор не является циклом")
        return self.group.canonical(self._to_standard.apply(coordinates))

    def representative(self, element: Sequence[int]) -> Vector:
        """
        Цикл, представляющий элемент группы в стандартных координатах.
        """
        return self.cycles.apply(self._from_standard.apply(element))

    def is_boundary(self, cycle: Sequence[int]) -> bool:
        return self.group.is_zero(self.class_of(cycle))


@lru_cache(maxsize=2048)
def homology_module(spectrum: FormalSpectrum, degree: int) -> Homology:
    return Homology(spectrum, degree)


def homology(spectrum: FormalSpectrum, degree: int) -> FGAbelianGroup:
    """
    Гомологии H_k(X) = π_k X.

    Example:
        >>> X = FormalSpectrum.build({1: 1, 0: 1}, {1: IntMatrix.from_rows([[2]])})
        >>> homology(X, 0).describe()
        'Z/2'
    """
    return homology_module(spectrum, degree).group


def induced_map(f: ChainMap, degree: int) -> GroupHom:
    """
    Гомоморфизм H_k(f): H_k(X) → H_k(Y).
    """
    source = homology_module(f.source, degree)
    target = homology_module(f.target, degree)
    component = f.component(degree)
    n = source.group.generators
    columns = [
        target.class_of(component.apply(source.representative(unit_vector(n, j))))
        for j in range(n)
    ]
    return GroupHom(
        source.group,
        target.group,
        IntMatrix.from_columns(columns, target.group.generators),
    )
