from fractions import Fraction

import numpy
import sympy

from logtangent import as_matrix
from logtangent import determinant
from logtangent import nullspace
from logtangent import rank
from logtangent import rref
from logtangent import solve


def test_rank_of_dependent_rows():
    assert rank(as_matrix([[1, 2], [2, 4]])) == 1
    assert rank(as_matrix([[1, 2], [3, 4]])) == 2
    assert rank(as_matrix([], cols=3)) == 0


def test_rref_pivots():
    reduced, pivots = rref(as_matrix([[0, 2, 4], [1, 1, 1]]))
    assert pivots == (0, 1)
    assert list(reduced[0]) == [1, 0, -1]
    assert list(reduced[1]) == [0, 1, 2]


def test_nullspace_annihilated(rng: numpy.random.Generator):
    for _ in range(20):
        values = rng.integers(-5, 6, size=(3, 5))
        matrix = as_matrix(values.tolist())
        basis = nullspace(matrix)
        assert basis.shape[1] == 5 - rank(matrix)
        product = matrix.dot(basis)
        assert all(value == 0 for value in product.flat)


def test_solve():
    solution = solve(as_matrix([[2, 0], [0, 4]]), [1, 1])
    assert list(solution) == [Fraction(1, 2), Fraction(1, 4)]
    assert solve(as_matrix([[1, 1], [1, 1]]), [1, 2]) is None


def test_determinant_against_sympy(rng: numpy.random.Generator):
    assert determinant(as_matrix([[1, 2], [3, 4]])) == -2
    for _ in range(10):
        values = rng.integers(-6, 7, size=(4, 4)).tolist()
        expected = sympy.Matrix(values).det()
        assert determinant(as_matrix(values)) == int(expected)
