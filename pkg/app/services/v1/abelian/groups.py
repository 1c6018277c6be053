"""
Модуль конечно порожденных абелевых групп и гомоморфизмов.

Включает в себя:
- FGAbelianGroup: группа, заданная целочисленным представлением
- GroupHom: гомоморфизм на выбранных образующих с проверкой корректности
- kernel / image / cokernel: универсальные конструкции с отображениями
- is_exact_at: точность в средней группе
- HomGroup / hom_group: группа гомоморфизмов с координатами элементов
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import List, NamedTuple, Optional, Sequence, Tuple

from app.core.exceptions import (IllDefinedHomError, NotComposableError,
                                 ShapeMismatchError)

from .matrix import IntMatrix, Vector
from .snf import (SmithForm, hermite_basis, in_span, kernel_basis,
                  smith_normal_form, solve, solve_matrix)


@dataclass(frozen=True, eq=False)
class FGAbelianGroup:
    """
    Конечно порожденная абелева группа Z^n / (строки представления).

    Равенство групп понимается как равенство инвариантов (rank, torsion);
    для проверки совместимости отображений используется same_presentation.

    Attributes:
        presentation (IntMatrix): Матрица соотношений × образующих

    Properties:
        generators: Число образующих
        relations: Решетка соотношений столбцами (образующие × соотношения)
        rank: Свободный ранг
        torsion: Инвариантные множители ≥ 2, каждый делит следующий

    Example:
        >>> G = group_from_presentation(IntMatrix.from_rows([[2, 0], [0, 3]]))
        >>> G.rank, G.torsion
        (0, (6,))
    """

    presentation: IntMatrix

    @classmethod
    def free(cls, rank: int) -> "FGAbelianGroup":
        return cls(IntMatrix.zeros(0, rank))

    @classmethod
    def zero(cls) -> "FGAbelianGroup":
        return cls.free(0)

    @classmethod
    def cyclic(cls, order: int) -> "FGAbelianGroup":
        """
        Циклическая группа Z/order (order = 0 дает Z).
        """
        return cls.from_invariants(0, (order,)) if order else cls.free(1)

    @classmethod
    def from_invariants(cls, rank: int, torsion: Sequence[int]) -> "FGAbelianGroup":
        torsion = [t for t in torsion if abs(t) != 1]
        size = len(torsion) + rank
        return cls(IntMatrix.diagonal(torsion, len(torsion), size))

    @property
    def generators(self) -> int:
        return self.presentation.cols

    @cached_property
    def relations(self) -> IntMatrix:
        return self.presentation.T

    @cached_property
    def _form(self) -> SmithForm:
        return smith_normal_form(self.relations)

    @cached_property
    def _kept(self) -> Tuple[Tuple[int, int], ...]:
        # (индекс координаты после U, модуль; 0 для свободной)
        factors = self._form.factors
        kept = [(i, d) for i, d in enumerate(factors) if d > 1]
        kept += [(i, 0) for i in range(len(factors), self.generators)]
        return tuple(kept)

    @cached_property
    def rank(self) -> int:
        return self.generators - self._form.rank

    @cached_property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self._form.factors if d > 1)

    @property
    def invariants(self) -> Tuple[int, Tuple[int, ...]]:
        return self.rank, self.torsion

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FGAbelianGroup):
            return NotImplemented
        return self.invariants == other.invariants

    def __hash__(self) -> int:
        return hash(self.invariants)

    def same_presentation(self, other: "FGAbelianGroup") -> bool:
        return self.presentation == other.presentation

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def order(self) -> Optional[int]:
        """
        Порядок группы; None для бесконечной.
        """
        if self.rank:
            return None
        result = 1
        for t in self.torsion:
            result *= t
        return result

    def canonical(self, element: Sequence[int]) -> Vector:
        """
        Канонические координаты элемента: сначала кручение по модулям
        инвариантных множителей, затем свободная часть.
        """
        if len(element) != self.generators:
            raise ShapeMismatchError("canonical", self.generators, len(element))
        y = self._form.U.apply(element)
        return tuple(y[i] % d if d else y[i] for i, d in self._kept)

    def from_canonical(self, coordinates: Sequence[int]) -> Vector:
        y = [0] * self.generators
        for (i, _), value in zip(self._kept, coordinates):
            y[i] = value
        return self._form.U_inv.apply(y)

    def is_zero(self, element: Sequence[int]) -> bool:
        return not any(self.canonical(element))

    def equal(self, x: Sequence[int], y: Sequence[int]) -> bool:
        return self.is_zero(tuple(a - b for a, b in zip(x, y)))

    def in_subgroup(self, generators: IntMatrix, element: Sequence[int]) -> bool:
        """
        Лежит ли элемент в подгруппе, порожденной столбцами generators.
        """
        span = IntMatrix.hstack(self.generators, generators, self.relations)
        return in_span(span, element)

    def minimize(self) -> Tuple["FGAbelianGroup", "GroupHom", "GroupHom"]:
        """
        Стандартная форма Z/t_1 ⊕ ... ⊕ Z/t_k ⊕ Z^r с изоморфизмами.

        Returns:
            (стандартная группа, отображение в нее, обратное отображение)
        """
        standard = FGAbelianGroup.from_invariants(self.rank, self.torsion)
        indices = [i for i, _ in self._kept]
        to_standard = GroupHom(
            self, standard, self._form.U.select_rows(indices)
        )
        from_standard = GroupHom(
            standard, self, self._form.U_inv.select_columns(indices)
        )
        return standard, to_standard, from_standard

    def describe(self) -> str:
        """
        Текстовая запись вида "Z^2 ⊕ Z/2".
        """
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __repr__(self) -> str:
        return f"FGAbelianGroup({self.describe()})"


def group_from_presentation(presentation: IntMatrix) -> FGAbelianGroup:
    """
    Группа по матрице соотношений × образующих.

    Example:
        >>> group_from_presentation(IntMatrix.zeros(0, 3)).describe()
        'Z^3'
    """
    return FGAbelianGroup(presentation)


def direct_sum(*groups: FGAbelianGroup) -> FGAbelianGroup:
    return FGAbelianGroup(
        IntMatrix.block_diagonal(*(group.presentation for group in groups))
    )


@dataclass(frozen=True, eq=False)
class GroupHom:
    """
    Гомоморфизм конечно порожденных абелевых групп.

    Матрица размера target.generators × source.generators действует на
    столбцы координат. Корректность (соотношения переходят в соотношения)
    проверяется при создании.

    Attributes:
        source (FGAbelianGroup): Источник
        target (FGAbelianGroup): Цель
        matrix (IntMatrix): Матрица на образующих

    Raises:
        ShapeMismatchError: Размер матрицы не согласован с образующими
        IllDefinedHomError: Соотношение источника не переходит в соотношения цели
    """

    source: FGAbelianGroup
    target: FGAbelianGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        expected = (self.target.generators, self.source.generators)
        if self.matrix.shape != expected:
            raise ShapeMismatchError("GroupHom", expected, self.matrix.shape)
        images = self.matrix @ self.source.relations
        for j, column in enumerate(images.columns()):
            if not self.target.is_zero(column):
                raise IllDefinedHomError(j)

    @classmethod
    def identity(cls, group: FGAbelianGroup) -> "GroupHom":
        return cls(group, group, IntMatrix.identity(group.generators))

    @classmethod
    def zero(cls, source: FGAbelianGroup, target: FGAbelianGroup) -> "GroupHom":
        return cls(
            source, target, IntMatrix.zeros(target.generators, source.generators)
        )

    def apply(self, element: Sequence[int]) -> Vector:
        return self.matrix.apply(element)

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        """
        Композиция self ∘ other.
        """
        if not other.target.same_presentation(self.source):
            raise NotComposableError("compose")
        return GroupHom(other.source, self.target, self.matrix @ other.matrix)

    def __add__(self, other: "GroupHom") -> "GroupHom":
        self._check_parallel(other)
        return GroupHom(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        self._check_parallel(other)
        return GroupHom(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self) -> "GroupHom":
        return GroupHom(self.source, self.target, -self.matrix)

    def scale(self, factor: int) -> "GroupHom":
        return GroupHom(self.source, self.target, self.matrix.scale(factor))

    def is_zero(self) -> bool:
        return all(self.target.is_zero(c) for c in self.matrix.columns())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupHom):
            return NotImplemented
        if not (
            self.source.same_presentation(other.source)
            and self.target.same_presentation(other.target)
        ):
            return False
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.source.generators, self.target.generators))

    def is_injective(self) -> bool:
        return kernel(self).group.is_trivial()

    def is_surjective(self) -> bool:
        return cokernel(self).group.is_trivial()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse(self) -> "GroupHom":
        """
        Обратный изоморфизм.

        Raises:
            IllDefinedHomError: Отображение не является изоморфизмом
        """
        a, b = self.source.generators, self.target.generators
        span = IntMatrix.hstack(b, self.matrix, self.target.relations)
        columns = []
        for i in range(b):
            unit = tuple(1 if j == i else 0 for j in range(b))
            solution = solve(span, unit)
            if solution is None:
                raise IllDefinedHomError(i)
            columns.append(solution[:a])
        return GroupHom(self.target, self.source, IntMatrix.from_columns(columns, a))

    def _check_parallel(self, other: "GroupHom") -> None:
        if not (
            self.source.same_presentation(other.source)
            and self.target.same_presentation(other.target)
        ):
            raise NotComposableError("add")


class Kernel(NamedTuple):
    group: FGAbelianGroup
    inclusion: GroupHom


class Image(NamedTuple):
    group: FGAbelianGroup
    inclusion: GroupHom
    projection: GroupHom


class Cokernel(NamedTuple):
    group: FGAbelianGroup
    projection: GroupHom


def _preimage_lattice(h: GroupHom) -> IntMatrix:
    # {x ∈ Z^a : M·x ∈ R_B}
    a, b = h.source.generators, h.target.generators
    stacked = IntMatrix.hstack(b, h.matrix, -h.target.relations)
    return hermite_basis(kernel_basis(stacked).select_rows(range(a)))


def kernel(h: GroupHom) -> Kernel:
    """
    Ядро гомоморфизма со вложением.

    Example:
        >>> Z = FGAbelianGroup.free(1)
        >>> kernel(GroupHom(Z, Z, IntMatrix.from_rows([[2]]))).group.describe()
        '0'
    """
    lattice = _preimage_lattice(h)
    coordinates = solve_matrix(lattice, h.source.relations)
    raw = FGAbelianGroup(coordinates.T)
    standard, _, from_standard = raw.minimize()
    inclusion = GroupHom(standard, h.source, lattice @ from_standard.matrix)
    return Kernel(standard, inclusion)


def image(h: GroupHom) -> Image:
    lattice = _preimage_lattice(h)
    raw = FGAbelianGroup(lattice.T)
    standard, to_standard, from_standard = raw.minimize()
    inclusion = GroupHom(standard, h.target, h.matrix @ from_standard.matrix)
    projection = GroupHom(h.source, standard, to_standard.matrix)
    return Image(standard, inclusion, projection)


def cokernel(h: GroupHom) -> Cokernel:
    b = h.target.generators
    raw = FGAbelianGroup(IntMatrix.hstack(b, h.target.relations, h.matrix).T)
    standard, to_standard, _ = raw.minimize()
    return Cokernel(standard, GroupHom(h.target, standard, to_standard.matrix))


def is_exact_at(f: GroupHom, g: GroupHom) -> bool:
    """
    Точность A →f B →g C в B: im f = ker g.

    Raises:
        NotComposableError: Цель f не совпадает с источником g
    """
    if not f.target.same_presentation(g.source):
        raise NotComposableError("is_exact_at")
    if not (g @ f).is_zero():
        return False
    inclusion = kernel(g).inclusion
    return all(
        g.source.in_subgroup(f.matrix, column)
        for column in inclusion.matrix.columns()
    )


def factor_through_injection(h: GroupHom, inclusion: GroupHom) -> Optional[GroupHom]:
    """
    Поднятие h: C → B вдоль инъекции i: A → B, т.е. f с i∘f = h.

    Returns:
        f или None, если образ h не лежит в образе i
    """
    a, b = inclusion.source.generators, inclusion.target.generators
    span = IntMatrix.hstack(b, inclusion.matrix, inclusion.target.relations)
    columns = []
    for column in h.matrix.columns():
        solution = solve(span, column)
        if solution is None:
            return None
        columns.append(solution[:a])
    return GroupHom(h.source, inclusion.source, IntMatrix.from_columns(columns, a))


class HomGroup:
    """
    Группа Hom(A, B) с координатами элементов.

    Допустимые матрицы {M : M·R_A ⊂ R_B} образуют решетку; по модулю матриц
    со столбцами из R_B получается Hom(A, B) в стандартной форме.

    Attributes:
        source (FGAbelianGroup): A
        target (FGAbelianGroup): B
        group (FGAbelianGroup): Hom(A, B) в стандартной форме
    """

    def __init__(self, source: FGAbelianGroup, target: FGAbelianGroup):
        self.source = source
        self.target = target
        a, b = source.generators, target.generators
        size = a * b
        self._admissible = self._admissible_lattice(a, b)

        null_columns: List[Vector] = []
        for i in range(a):
            for relation in target.relations.columns():
                vector = [0] * size
                vector[i * b : (i + 1) * b] = relation
                null_columns.append(tuple(vector))
        null = IntMatrix.from_columns(null_columns, size)
        coordinates = solve_matrix(self._admissible, null)
        raw = FGAbelianGroup(coordinates.T)
        self.group, self._to_standard, self._from_standard = raw.minimize()

    def _admissible_lattice(self, a: int, b: int) -> IntMatrix:
        source_relations = self.source.relations
        target_relations = self.target.relations
        ka, kb = source_relations.cols, target_relations.cols
        unknowns = a * b + ka * kb
        rows = []
        for j in range(ka):
            relation = source_relations.column(j)
            for row in range(b):
                equation = [0] * unknowns
                for i in range(a):
                    equation[i * b + row] = relation[i]
                for k in range(kb):
                    equation[a * b + j * kb + k] = -target_relations[row, k]
                rows.append(equation)
        if not rows:
            return IntMatrix.identity(a * b)
        solutions = kernel_basis(IntMatrix.from_rows(rows, unknowns))
        return hermite_basis(solutions.select_rows(range(a * b)))

    def element(self, coordinates: Sequence[int]) -> GroupHom:
        """
        Гомоморфизм по каноническим координатам в group.
        """
        raw = self._from_standard.apply(coordinates)
        vector = self._admissible.apply(raw)
        b = self.target.generators
        columns = [vector[i * b : (i + 1) * b] for i in range(self.source.generators)]
        return GroupHom(self.source, self.target, IntMatrix.from_columns(columns, b))

    def coordinates(self, h: GroupHom) -> Vector:
        """
        Канонические координаты гомоморфизма h: A → B.
        """
        vector = sum(h.matrix.columns(), ())
        raw = solve(self._admissible, vector)
        if raw is None:
            raise IllDefinedHomError(0)
        return self.group.canonical(self._to_standard.apply(raw))

    def class_of(self, h: GroupHom) -> Vector:
        return self.coordinates(h)

    def precompose(self, f: GroupHom) -> Tuple["HomGroup", GroupHom]:
        """
        Отображение Hom(A, B) → Hom(A', B), h ↦ h∘f для f: A' → A.
        """
        other = hom_module(f.source, self.target)
        columns = [
            other.coordinates(self.element(unit) @ f)
            for unit in _units(self.group.generators)
        ]
        matrix = IntMatrix.from_columns(columns, other.group.generators)
        return other, GroupHom(self.group, other.group, matrix)

    def postcompose(self, g: GroupHom) -> Tuple["HomGroup", GroupHom]:
        """
        Отображение Hom(A, B) → Hom(A, B'), h ↦ g∘h для g: B → B'.
        """
        other = hom_module(self.source, g.target)
        columns = [
            other.coordinates(g @ self.element(unit))
            for unit in _units(self.group.generators)
        ]
        matrix = IntMatrix.from_columns(columns, other.group.generators)
        return other, GroupHom(self.group, other.group, matrix)


def _units(n: int) -> List[Vector]:
    return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]


@lru_cache(maxsize=1024)
def _hom_module(source: IntMatrix, target: IntMatrix) -> HomGroup:
    return HomGroup(FGAbelianGroup(source), FGAbelianGroup(target))


def hom_module(source: FGAbelianGroup, target: FGAbelianGroup) -> HomGroup:
    """
    HomGroup с кэшированием по представлениям.
    """
    return _hom_module(source.presentation, target.presentation)


def hom_group(source: FGAbelianGroup, target: FGAbelianGroup) -> FGAbelianGroup:
    """
    Группа гомоморфизмов A → B.

    Example:
        >>> hom_group(FGAbelianGroup.cyclic(4), FGAbelianGroup.cyclic(6)).describe()
        'Z/2'
    """
    return hom_module(source, target).group
