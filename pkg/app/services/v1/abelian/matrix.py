"""
Модуль целочисленных матриц.

Неизменяемая матрица над Z с явными размерами: нулевые строки и столбцы
сохраняют форму, что важно для пустых систем соотношений и нулевых
степеней комплексов.
"""

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import sympy

from app.core.exceptions import ShapeMismatchError

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """
    Целочисленная матрица rows × cols.

    Attributes:
        rows (int): Число строк
        cols (int): Число столбцов
        entries (Tuple[Tuple[int, ...], ...]): Элементы по строкам

    Example:
        >>> m = IntMatrix.from_rows([[1, 2], [3, 4]])
        >>> (m @ IntMatrix.identity(2)) == m
        True
    """

    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise ShapeMismatchError(
                "IntMatrix", (self.rows, self.cols), _shape_of(self.entries)
            )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int]], cols: int | None = None
    ) -> "IntMatrix":
        """
        Строит матрицу из списка строк.

        Args:
            rows: Строки матрицы
            cols: Число столбцов; обязательно, если строк нет

        Returns:
            IntMatrix
        """
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        entries = tuple(
            tuple(int(column[i]) for column in columns) for i in range(rows)
        )
        return cls(rows, len(columns), entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.diagonal([1] * n, n, n)

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int, cols: int) -> "IntMatrix":
        entries = [[0] * cols for _ in range(rows)]
        for i, value in enumerate(values):
            entries[i][i] = int(value)
        return cls.from_rows(entries, cols)

    @classmethod
    def hstack(cls, rows: int, *blocks: "IntMatrix") -> "IntMatrix":
        """
        Склеивает блоки по горизонтали (число строк задается явно).
        """
        for block in blocks:
            if block.rows != rows:
                raise ShapeMismatchError("hstack", rows, block.rows)
        entries = tuple(
            sum((block.entries[i] for block in blocks), ()) for i in range(rows)
        )
        return cls(rows, sum(block.cols for block in blocks), entries)

    @classmethod
    def vstack(cls, cols: int, *blocks: "IntMatrix") -> "IntMatrix":
        for block in blocks:
            if block.cols != cols:
                raise ShapeMismatchError("vstack", cols, block.cols)
        entries = sum((block.entries for block in blocks), ())
        return cls(len(entries), cols, entries)

    @classmethod
    def block_diagonal(cls, *blocks: "IntMatrix") -> "IntMatrix":
        rows = sum(block.rows for block in blocks)
        cols = sum(block.cols for block in blocks)
        entries = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for block in blocks:
            for i, row in enumerate(block.entries):
                entries[r0 + i][c0 : c0 + block.cols] = row
            r0 += block.rows
            c0 += block.cols
        return cls.from_rows(entries, cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_columns(self.entries, self.cols) if self.rows else (
            IntMatrix.zeros(self.cols, 0)
        )

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def select_rows(self, indices: Iterable[int]) -> "IntMatrix":
        return IntMatrix.from_rows([self.entries[i] for i in indices], self.cols)

    def select_columns(self, indices: Iterable[int]) -> "IntMatrix":
        indices = list(indices)
        return IntMatrix(
            self.rows,
            len(indices),
            tuple(tuple(row[j] for j in indices) for row in self.entries),
        )

    def apply(self, vector: Sequence[int]) -> Vector:
        """
        Умножение на вектор-столбец.
        """
        if len(vector) != self.cols:
            raise ShapeMismatchError("apply", self.cols, len(vector))
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatchError("matmul", self.cols, other.rows)
        columns = other.columns()
        entries = tuple(
            tuple(sum(a * b for a, b in zip(row, column)) for column in columns)
            for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, entries)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other, "add")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, factor: int) -> "IntMatrix":
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(tuple(factor * a for a in row) for row in self.entries),
        )

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.entries for a in row)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    def determinant(self) -> int:
        """
        Определитель квадратной матрицы (через sympy).
        """
        if self.rows != self.cols:
            raise ShapeMismatchError("determinant", "square", self.shape)
        if self.rows == 0:
            return 1
        return int(sympy.Matrix(self.to_lists()).det())

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def _check_same_shape(self, other: "IntMatrix", operation: str) -> None:
        if self.shape != other.shape:
            raise ShapeMismatchError(operation, self.shape, other.shape)


def _shape_of(entries) -> Tuple[int, ...]:
    return (len(entries),) + tuple(sorted({len(row) for row in entries}))


def unit_vector(n: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(n))


def add_vectors(*vectors: Sequence[int]) -> Vector:
    return tuple(sum(parts) for parts in zip(*vectors))


def scale_vector(factor: int, vector: Sequence[int]) -> Vector:
    return tuple(factor * a for a in vector)
