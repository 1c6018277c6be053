"""
Модуль нормальных форм целочисленных матриц.

Включает в себя:
- SmithForm: разложение U·M·V = D с обратными матрицами преобразований
- smith_normal_form: приведение с выбором наименьшего по модулю ведущего элемента
- hermite_basis: каноническая база решетки, натянутой на столбцы
- kernel_basis: каноническая база целочисленного ядра
- solve / solve_matrix: целочисленное решение линейных систем
- in_span: принадлежность вектора решетке
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from app.core.exceptions import ShapeMismatchError

from .matrix import IntMatrix, Vector


@dataclass(frozen=True)
class SmithForm:
    """
    Результат приведения к нормальной форме Смита.

    Attributes:
        U (IntMatrix): Унимодулярная матрица строк (rows × rows)
        U_inv (IntMatrix): Обратная к U
        D (IntMatrix): Диагональная форма, d_i | d_{i+1}, d_i ≥ 0
        V (IntMatrix): Унимодулярная матрица столбцов (cols × cols)
        V_inv (IntMatrix): Обратная к V
    """

    U: IntMatrix
    U_inv: IntMatrix
    D: IntMatrix
    V: IntMatrix
    V_inv: IntMatrix

    @property
    def factors(self) -> Tuple[int, ...]:
        """
        Ненулевые диагональные элементы D по порядку.
        """
        size = min(self.D.rows, self.D.cols)
        return tuple(self.D[i, i] for i in range(size) if self.D[i, i] != 0)

    @property
    def rank(self) -> int:
        return len(self.factors)


class _Reducer:
    """
    Изменяемое состояние приведения: матрица и накопленные преобразования.

    Каждая элементарная операция зеркально применяется к обратной матрице,
    чтобы U_inv и V_inv не приходилось обращать в конце.
    """

    def __init__(self, matrix: IntMatrix):
        self.m, self.n = matrix.rows, matrix.cols
        self.A = matrix.to_lists()
        self.U = IntMatrix.identity(self.m).to_lists()
        self.Ui = IntMatrix.identity(self.m).to_lists()
        self.V = IntMatrix.identity(self.n).to_lists()
        self.Vi = IntMatrix.identity(self.n).to_lists()

    def row_add(self, i: int, k: int, c: int) -> None:
        # row_i += c·row_k
        self.A[i] = [a + c * b for a, b in zip(self.A[i], self.A[k])]
        self.U[i] = [a + c * b for a, b in zip(self.U[i], self.U[k])]
        for row in self.Ui:
            row[k] -= c * row[i]

    def row_swap(self, i: int, k: int) -> None:
        if i == k:
            return
        self.A[i], self.A[k] = self.A[k], self.A[i]
        self.U[i], self.U[k] = self.U[k], self.U[i]
        for row in self.Ui:
            row[i], row[k] = row[k], row[i]

    def row_negate(self, i: int) -> None:
        self.A[i] = [-a for a in self.A[i]]
        self.U[i] = [-a for a in self.U[i]]
        for row in self.Ui:
            row[i] = -row[i]

    def col_add(self, j: int, k: int, c: int) -> None:
        # col_j += c·col_k
        for row in self.A:
            row[j] += c * row[k]
        for row in self.V:
            row[j] += c * row[k]
        self.Vi[k] = [a - c * b for a, b in zip(self.Vi[k], self.Vi[j])]

    def col_swap(self, j: int, k: int) -> None:
        if j == k:
            return
        for row in self.A:
            row[j], row[k] = row[k], row[j]
        for row in self.V:
            row[j], row[k] = row[k], row[j]
        self.Vi[j], self.Vi[k] = self.Vi[k], self.Vi[j]

    def smallest_entry(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                value = abs(self.A[i][j])
                if value and (best is None or value < best[0]):
                    best = (value, i, j)
        return None if best is None else (best[1], best[2])

    def clear_cross(self, t: int) -> bool:
        """
        Зануляет строку и столбец t вне ведущего элемента.

        Returns:
            True, если после деления с остатком остались ненулевые остатки
        """
        pivot = self.A[t][t]
        dirty = False
        for i in range(t + 1, self.m):
            q = self.A[i][t] // pivot
            if q:
                self.row_add(i, t, -q)
            dirty = dirty or self.A[i][t] != 0
        for j in range(t + 1, self.n):
            q = self.A[t][j] // pivot
            if q:
                self.col_add(j, t, -q)
            dirty = dirty or self.A[t][j] != 0
        return dirty

    def repivot_cross(self, t: int) -> None:
        candidates = [
            (abs(self.A[i][t]), i, t) for i in range(t, self.m) if self.A[i][t]
        ]
        candidates += [
            (abs(self.A[t][j]), t, j) for j in range(t, self.n) if self.A[t][j]
        ]
        _, i, j = min(candidates)
        self.row_swap(t, i)
        self.col_swap(t, j)

    def non_divisible(self, t: int) -> Optional[int]:
        pivot = self.A[t][t]
        for i in range(t + 1, self.m):
            for j in range(t + 1, self.n):
                if self.A[i][j] % pivot:
                    return i
        return None

    def reduce(self) -> SmithForm:
        t = 0
        while t < min(self.m, self.n):
            position = self.smallest_entry(t)
            if position is None:
                break
            self.row_swap(t, position[0])
            self.col_swap(t, position[1])
            while True:
                if self.clear_cross(t):
                    self.repivot_cross(t)
                    continue
                row = self.non_divisible(t)
                if row is None:
                    break
                self.row_add(t, row, 1)
            if self.A[t][t] < 0:
                self.row_negate(t)
            t += 1

        return SmithForm(
            U=IntMatrix.from_rows(self.U, self.m),
            U_inv=IntMatrix.from_rows(self.Ui, self.m),
            D=IntMatrix.from_rows(self.A, self.n),
            V=IntMatrix.from_rows(self.V, self.n),
            V_inv=IntMatrix.from_rows(self.Vi, self.n),
        )


@lru_cache(maxsize=4096)
def smith_normal_form(matrix: IntMatrix) -> SmithForm:
    """
    Нормальная форма Смита.

    Ведущим выбирается наименьший по модулю ненулевой элемент; при
    нарушении делимости строка с остатком добавляется к ведущей.

    Args:
        matrix: Произвольная прямоугольная целочисленная матрица

    Returns:
        SmithForm с U·M·V = D

    Example:
        >>> smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]])).factors
        (2, 4)
    """
    return _Reducer(matrix).reduce()


def _row_hermite(rows: List[List[int]], width: int) -> List[List[int]]:
    A = [list(row) for row in rows if any(row)]
    r = 0
    for col in range(width):
        if r >= len(A):
            break
        if not any(A[i][col] for i in range(r, len(A))):
            continue
        while True:
            live = [i for i in range(r, len(A)) if A[i][col]]
            top = min(live, key=lambda i: abs(A[i][col]))
            A[r], A[top] = A[top], A[r]
            rest = [i for i in range(r + 1, len(A)) if A[i][col]]
            if not rest:
                break
            for i in rest:
                q = A[i][col] // A[r][col]
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        if A[r][col] < 0:
            A[r] = [-a for a in A[r]]
        for i in range(r):
            q = A[i][col] // A[r][col]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
    return A[:r]


@lru_cache(maxsize=4096)
def hermite_basis(generators: IntMatrix) -> IntMatrix:
    """
    Каноническая база решетки, натянутой на столбцы.

    Args:
        generators: Матрица n × k, столбцы порождают решетку в Z^n

    Returns:
        Матрица n × r, столбцы которой образуют эрмитову (ступенчатую,
        с положительными ведущими элементами) базу той же решетки
    """
    rows = _row_hermite(generators.T.to_lists(), generators.rows)
    return IntMatrix.from_columns(rows, generators.rows)


@lru_cache(maxsize=4096)
def kernel_basis(matrix: IntMatrix) -> IntMatrix:
    """
    База целочисленного ядра {x : M·x = 0}.

    Returns:
        Матрица cols × k с канонической базой ядра в столбцах
    """
    form = smith_normal_form(matrix)
    free = form.V.select_columns(range(form.rank, matrix.cols))
    return hermite_basis(free)


def solve(matrix: IntMatrix, target: Sequence[int]) -> Optional[Vector]:
    """
    Целочисленное решение M·x = b.

    Args:
        matrix: Матрица системы
        target: Правая часть

    Returns:
        Одно решение или None, если над Z решений нет
    """
    if len(target) != matrix.rows:
        raise ShapeMismatchError("solve", matrix.rows, len(target))
    form = smith_normal_form(matrix)
    w = form.U.apply(target)
    factors = form.factors
    y = [0] * matrix.cols
    for i, value in enumerate(w):
        if i < len(factors):
            if value % factors[i]:
                return None
            y[i] = value // factors[i]
        elif value:
            return None
    return form.V.apply(y)


def solve_matrix(matrix: IntMatrix, targets: IntMatrix) -> Optional[IntMatrix]:
    """
    Целочисленное решение M·X = B по столбцам.
    """
    columns = []
    for column in targets.columns():
        solution = solve(matrix, column)
        if solution is None:
            return None
        columns.append(solution)
    return IntMatrix.from_columns(columns, matrix.cols)


def in_span(generators: IntMatrix, vector: Sequence[int]) -> bool:
    return solve(generators, vector) is not None
