import itertools
from fractions import Fraction

import pytest
import sympy

from logtangent import Form
from logtangent import graded_map_matrix
from logtangent import in_module_span
from logtangent import parse_form
from logtangent import rank
from logtangent import syzygies_up_to
from logtangent._forms import monomials
from logtangent._sampling import random_form
from logtangent._syzygy import column_to_vector
from logtangent._syzygy import vector_to_column


def _combine(row, column) -> Form:
    total = None
    for form, entry in zip(row, column):
        if entry.is_zero:
            continue
        product = form * entry
        total = product if total is None else total + product
    return total


def test_koszul_syzygy_of_two_variables():
    row = [parse_form("x0"), parse_form("x1")]
    basis = syzygies_up_to(row, dmax=3)
    assert basis.degrees == (2,)
    (column,) = basis.generators
    assert _combine(row, column).is_zero
    assert {entry.degree for entry in column} == {1}


def test_syzygies_of_three_forms():
    row = [parse_form("z^2"), parse_form("y^2*z"), parse_form("x*y^2-y^3")]
    basis = syzygies_up_to(row, dmax=4)
    assert basis.degrees == (4, 4)
    for column, degree in basis:
        assert _combine(row, column).is_zero
        assert degree == 4

    expected = [
        (parse_form("y^2"), parse_form("-z"), Form.zero(1)),
        (Form.zero(2), parse_form("x-y"), parse_form("-z")),
    ]
    sources = basis.source_degrees
    for column in expected:
        assert in_module_span(column, basis.generators, basis.degrees, sources, 4)
    for column in basis.generators:
        assert in_module_span(column, expected, (4, 4), sources, 4)


def test_no_syzygies_below_the_bound():
    row = [parse_form("x0^2"), parse_form("x1^2")]
    assert len(syzygies_up_to(row, dmax=3)) == 0
    assert syzygies_up_to(row, dmax=4).degrees == (4,)


def test_graded_piece_dimensions():
    row = [[parse_form("x0"), parse_form("x1"), parse_form("x2")]]
    matrix = graded_map_matrix(row, [1, 1, 1], [0], 2)
    assert matrix.shape == (6, 9)
    assert rank(matrix) == 6


def test_entry_of_wrong_degree_rejected():
    with pytest.raises(ValueError):
        graded_map_matrix([[parse_form("x0^2")]], [1], [0], 2)


def _rational(value) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _exact_piece(row, sources, t) -> sympy.Matrix:
    matrix = graded_map_matrix([row], sources, [0], t, 3)
    return sympy.Matrix(
        matrix.shape[0], matrix.shape[1], lambda i, j: _rational(matrix[i, j])
    )


def _assert_matches_nullspace(row, dmax):
    basis = syzygies_up_to(row, dmax=dmax)
    sources = basis.source_degrees

    for t in range(min(sources), dmax + 1):
        for vector in _exact_piece(row, sources, t).nullspace():
            values = [Fraction(int(value.p), int(value.q)) for value in vector]
            column = vector_to_column(values, sources, t, 3)
            assert in_module_span(column, basis.generators, basis.degrees, sources, t)

    for column, degree in basis:
        vector = sympy.Matrix(
            [_rational(value) for value in column_to_vector(column, sources, degree, 3)]
        )
        product = _exact_piece(row, sources, degree) * vector
        assert all(value == 0 for value in product)


SMALL_MONOMIALS = [
    Form.from_terms({exponent: 1}, degree=degree, nvars=3)
    for degree in (1, 2)
    for exponent in monomials(3, degree)
]


@pytest.mark.parametrize(
    "row",
    [list(pair) for pair in itertools.combinations(SMALL_MONOMIALS, 2)],
    ids=lambda row: ",".join(str(form) for form in row),
)
def test_monomial_pairs_match_nullspace(row):
    _assert_matches_nullspace(row, dmax=4)


def test_seeded_rows_match_nullspace(rng):
    for _ in range(8):
        size = int(rng.integers(2, 4))
        row = []
        while len(row) < size:
            form = random_form(rng, int(rng.integers(1, 3)), bound=3)
            if not form.is_zero:
                row.append(form)
        _assert_matches_nullspace(row, dmax=4)
