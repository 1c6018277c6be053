"""
Модуль теорий уровней для башен.

Включает в себя:
- LevelTheory: протокол категории уровней
- Constraint: линейное условие left ∘ g ∘ right = value на неизвестный g
- GroupTheory: конечно порожденные абелевы группы и гомоморфизмы
- SpectrumTheory: формальные спектры и цепные отображения
- theory_of: выбор теории по объекту
"""

from typing import Any, List, NamedTuple, Optional, Protocol, Sequence, Tuple

from app.core.exceptions import TailMismatchError
from app.services.v1.abelian import (FGAbelianGroup, GroupHom, IntMatrix,
                                     Vector, hom_module, kernel_basis, solve,
                                     unit_vector)
from app.services.v1.complexes import (ChainMap, FormalSpectrum, HomComplex,
                                       degree_span, homotopy_module, shift,
                                       shift_map)


class Constraint(NamedTuple):
    """
    Условие left ∘ g ∘ right = value; None означает тождественное.
    """

    value: Any
    left: Optional[Any] = None
    right: Optional[Any] = None


class LevelTheory(Protocol):
    """
    Категория уровней башни.

    Морфизмы поддерживают композицию через @, объекты сравниваются
    методом same (для групп важно представление, а не инварианты).
    """

    name: str

    def identity(self, X: Any) -> Any: ...

    def zero(self, X: Any, Y: Any) -> Any: ...

    def zero_object(self) -> Any: ...

    def compose(self, g: Any, f: Any) -> Any: ...

    def equal(self, f: Any, g: Any) -> bool: ...

    def same(self, X: Any, Y: Any) -> bool: ...

    def is_zero_object(self, X: Any) -> bool: ...

    def shift(self, X: Any, m: int) -> Any: ...

    def shift_map(self, f: Any, m: int) -> Any: ...

    def degree_range(self, X: Any) -> Optional[Tuple[int, int]]: ...

    def hom_module(self, X: Any, Y: Any) -> Any: ...

    def solve(
        self, source: Any, target: Any, constraints: Sequence[Constraint]
    ) -> Optional[Any]: ...

    def describe(self, X: Any) -> str: ...

    def to_dict(self, X: Any) -> dict: ...


def _apply(constraint: Constraint, g: Any) -> Any:
    result = g
    if constraint.right is not None:
        result = result @ constraint.right
    if constraint.left is not None:
        result = constraint.left @ result
    return result


def _solve_stacked(
    columns: List[List[int]], target: List[int], unknowns: int
) -> Optional[Vector]:
    # columns заданы по неизвестным, каждая длины len(target)
    if not target:
        return (0,) * unknowns
    if not columns:
        return None if any(target) else ()
    return solve(IntMatrix.from_columns(columns, len(target)), target)


class GroupTheory:
    """
    Уровни: конечно порожденные абелевы группы.
    """

    name = "groups"

    def identity(self, X: FGAbelianGroup) -> GroupHom:
        return GroupHom.identity(X)

    def zero(self, X: FGAbelianGroup, Y: FGAbelianGroup) -> GroupHom:
        return GroupHom.zero(X, Y)

    def zero_object(self) -> FGAbelianGroup:
        return FGAbelianGroup.zero()

    def compose(self, g: GroupHom, f: GroupHom) -> GroupHom:
        return g @ f

    def equal(self, f: GroupHom, g: GroupHom) -> bool:
        return f == g

    def same(self, X: FGAbelianGroup, Y: FGAbelianGroup) -> bool:
        return X.same_presentation(Y)

    def is_zero_object(self, X: FGAbelianGroup) -> bool:
        return X.is_trivial()

    def shift(self, X: FGAbelianGroup, m: int) -> FGAbelianGroup:
        if m:
            raise TailMismatchError(m, "сдвиг у башни групп")
        return X

    def shift_map(self, f: GroupHom, m: int) -> GroupHom:
        if m:
            raise TailMismatchError(m, "сдвиг у башни групп")
        return f

    def degree_range(self, X: FGAbelianGroup) -> Optional[Tuple[int, int]]:
        return None

    def hom_module(self, X: FGAbelianGroup, Y: FGAbelianGroup):
        return hom_module(X, Y)

    def solve(
        self,
        source: FGAbelianGroup,
        target: FGAbelianGroup,
        constraints: Sequence[Constraint],
    ) -> Optional[GroupHom]:
        """
        Гомоморфизм g: source → target, удовлетворяющий всем условиям.

        Равенство понимается по модулю соотношений цели каждого условия,
        поэтому к неизвестным добавлены коэффициенты при соотношениях.
        """
        module = hom_module(source, target)
        n = module.group.generators
        basis = [module.element(unit_vector(n, i)) for i in range(n)]
        target_vector: List[int] = []
        columns: List[List[int]] = [[] for _ in range(n)]
        extra: List[List[int]] = []
        for constraint in constraints:
            value = constraint.value
            rows, cols = value.target.generators, value.source.generators
            height = len(target_vector)
            target_vector.extend(sum(value.matrix.columns(), ()))
            for i, h in enumerate(basis):
                columns[i].extend(sum(_apply(constraint, h).matrix.columns(), ()))
            for column in extra:
                column.extend([0] * rows * cols)
            for c in range(cols):
                for relation in value.target.relations.columns():
                    vector = [0] * (height + rows * cols)
                    vector[height + c * rows : height + (c + 1) * rows] = relation
                    extra.append(vector)
        solution = _solve_stacked(columns + extra, target_vector, n + len(extra))
        if solution is None:
            return None
        return module.element(solution[:n])

    def describe(self, X: FGAbelianGroup) -> str:
        return X.describe()

    def to_dict(self, X: FGAbelianGroup) -> dict:
        return X.to_dict()


def _flatten(f: ChainMap) -> List[int]:
    vector: List[int] = []
    for k in degree_span(f.source, f.target):
        vector.extend(sum(f.component(k).columns(), ()))
    return vector


class SpectrumTheory:
    """
    Уровни это формальные спектры, морфизмы это цепные отображения.

    Равенство морфизмов строгое (категория модели), гомотопические
    классы доступны через hom_module.
    """

    name = "spectra"

    def identity(self, X: FormalSpectrum) -> ChainMap:
        return ChainMap.identity(X)

    def zero(self, X: FormalSpectrum, Y: FormalSpectrum) -> ChainMap:
        return ChainMap.zero(X, Y)

    def zero_object(self) -> FormalSpectrum:
        return FormalSpectrum.zero()

    def compose(self, g: ChainMap, f: ChainMap) -> ChainMap:
        return g @ f

    def equal(self, f: ChainMap, g: ChainMap) -> bool:
        return f == g

    def same(self, X: FormalSpectrum, Y: FormalSpectrum) -> bool:
        return X == Y

    def is_zero_object(self, X: FormalSpectrum) -> bool:
        return X.is_zero()

    def shift(self, X: FormalSpectrum, m: int) -> FormalSpectrum:
        return shift(X, m)

    def shift_map(self, f: ChainMap, m: int) -> ChainMap:
        return shift_map(f, m)

    def degree_range(self, X: FormalSpectrum) -> Optional[Tuple[int, int]]:
        if X.is_zero():
            return None
        return X.lo, X.hi

    def hom_module(self, X: FormalSpectrum, Y: FormalSpectrum):
        return homotopy_module(X, Y, 0)

    def solve(
        self,
        source: FormalSpectrum,
        target: FormalSpectrum,
        constraints: Sequence[Constraint],
    ) -> Optional[ChainMap]:
        """
        Цепное отображение g: source → target с left ∘ g ∘ right = value.

        Цепные отображения это циклы степени 0 комплекса Hom, условия
        линейны по g, поэтому задача сводится к целочисленной системе.
        """
        complex_ = HomComplex(source, target)
        cycles = kernel_basis(complex_.spectrum.d(0))
        basis = [
            ChainMap.build(source, target, complex_.components(column))
            for column in cycles.columns()
        ]
        target_vector: List[int] = []
        columns: List[List[int]] = [[] for _ in basis]
        for constraint in constraints:
            target_vector.extend(_flatten(constraint.value))
            for i, g in enumerate(basis):
                columns[i].extend(_flatten(_apply(constraint, g)))
        solution = _solve_stacked(columns, target_vector, len(basis))
        if solution is None:
            return None
        return ChainMap.build(
            source, target, complex_.components(cycles.apply(solution))
        )

    def describe(self, X: FormalSpectrum) -> str:
        if X.name:
            return X.name
        if X.is_zero():
            return "0"
        return f"spectrum[{X.lo}..{X.hi}]"

    def to_dict(self, X: FormalSpectrum) -> dict:
        return X.to_dict()


GROUPS = GroupTheory()
SPECTRA = SpectrumTheory()


def theory_of(X: Any) -> LevelTheory:
    """
    Теория уровней по объекту.

    Raises:
        TypeError: Объект не группа и не спектр
    """
    if isinstance(X, FGAbelianGroup):
        return GROUPS
    if isinstance(X, FormalSpectrum):
        return SPECTRA
    raise TypeError(f"Нет теории уровней для {type(X).__name__}")
