"""
Тесты нормальной формы Смита и решеточных операций.
"""

from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import invariant_factors

from app.services.v1.abelian import (IntMatrix, hermite_basis, kernel_basis,
                                     smith_normal_form, solve)
from tests.strategies import int_matrices


def _is_diagonal(matrix: IntMatrix) -> bool:
    return all(
        matrix[i, j] == 0
        for i in range(matrix.rows)
        for j in range(matrix.cols)
        if i != j
    )


def test_two_by_two_example():
    form = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    assert form.D == IntMatrix.from_rows([[2, 0], [0, 4]])


def test_identity_and_zero():
    assert smith_normal_form(IntMatrix.identity(3)).D == IntMatrix.identity(3)
    zero = IntMatrix.zeros(2, 3)
    assert smith_normal_form(zero).D == zero
    assert smith_normal_form(IntMatrix.zeros(0, 2)).factors == ()


@settings(max_examples=500, deadline=None)
@given(int_matrices())
def test_smith_decomposition(matrix):
    form = smith_normal_form(matrix)
    assert form.U @ matrix @ form.V == form.D
    assert _is_diagonal(form.D)
    assert abs(form.U.determinant()) == 1
    assert abs(form.V.determinant()) == 1
    assert form.U @ form.U_inv == IntMatrix.identity(matrix.rows)
    assert form.V @ form.V_inv == IntMatrix.identity(matrix.cols)
    factors = form.factors
    assert all(d > 0 for d in factors)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
    size = min(matrix.rows, matrix.cols)
    assert [form.D[i, i] for i in range(len(factors), size)] == [0] * (
        size - len(factors)
    )


@settings(max_examples=200, deadline=None)
@given(int_matrices(min_rows=1, min_cols=1))
def test_factors_match_sympy(matrix):
    expected = [
        abs(int(d)) for d in invariant_factors(DM(matrix.to_lists(), ZZ)) if d != 0
    ]
    assert list(smith_normal_form(matrix).factors) == expected


@settings(max_examples=200, deadline=None)
@given(int_matrices())
def test_kernel_basis_is_annihilated(matrix):
    basis = kernel_basis(matrix)
    assert (matrix @ basis).is_zero()
    assert basis.cols == matrix.cols - smith_normal_form(matrix).rank


@given(int_matrices(max_rows=4, max_cols=4), st.data())
def test_solve_finds_preimages(matrix, data):
    x = data.draw(
        st.lists(st.integers(-5, 5), min_size=matrix.cols, max_size=matrix.cols)
    )
    b = matrix.apply(x)
    solution = solve(matrix, b)
    assert solution is not None
    assert matrix.apply(solution) == b


def test_solve_detects_non_integral():
    assert solve(IntMatrix.from_rows([[2]]), (1,)) is None
    assert solve(IntMatrix.zeros(1, 0), (1,)) is None


def test_hermite_basis_is_canonical():
    a = hermite_basis(IntMatrix.from_rows([[2, 4], [0, 6]]))
    b = hermite_basis(IntMatrix.from_rows([[2, 6], [0, 6]]))
    assert a == b
