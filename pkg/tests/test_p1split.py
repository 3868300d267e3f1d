from fractions import Fraction

import pytest

from logtangent import BinaryForm
from logtangent import GradedMatrixP1
from logtangent import LineP2
from logtangent import ParseError
from logtangent import PointP2
from logtangent import PreconditionError
from logtangent import SplittingType
from logtangent import coker_profile
from logtangent import cokernel_splitting
from logtangent import kernel_splitting
from logtangent import parse_form
from logtangent import parse_line
from logtangent import restrict_form
from logtangent import restrict_matrix

S = BinaryForm.variable(0)
T = BinaryForm.variable(1)


def test_splitting_type_basics():
    split = SplittingType((2, -1))
    assert split.degrees == (-1, 2)
    assert split.rank == 2
    assert split.degree == 1
    assert str(split) == "(-1,2;torsion=0)"
    assert SplittingType((-3, 0)).h1() == 2
    assert SplittingType((-3, 0)).h0() == 1
    assert SplittingType((), 2).h0(-5) == 2
    assert split.to_dict() == {"degrees": [-1, 2], "torsion": 0}


def test_line_geometry():
    p = PointP2((1, 0, 0))
    q = PointP2((0, 1, 0))
    line = LineP2.through(p, q)
    assert line == LineP2((0, 0, 1))
    assert line.contains(p) and line.contains(q)
    assert LineP2((1, 0, 0)).meet(LineP2((0, 1, 0))) == PointP2((0, 0, 1))
    assert parse_line("[0:0:-3]") == line
    with pytest.raises(PreconditionError):
        LineP2.through(p, p)
    with pytest.raises(ParseError):
        parse_line("[1:2]")


def test_parametrization_lies_on_line():
    line = LineP2((2, -3, 5))
    for s, t in [(1, 0), (0, 1), (3, -2)]:
        assert line.contains(line.point(s, t))
    for coordinate in line.param_forms():
        assert coordinate.nvars == 2


def test_restrict_form():
    line = LineP2((0, 0, 1))
    restricted = restrict_form(parse_form("x0^2-x1^2"), line)
    assert restricted == S * S - T * T
    assert restrict_form(parse_form("x0*x2"), line).is_zero


def test_kernel_of_a_row():
    matrix = GradedMatrixP1(((S, T),), source_degrees=(1, 1), target_degrees=(0,))
    assert kernel_splitting(matrix) == SplittingType((-2,))


def test_cokernel_of_a_column():
    matrix = GradedMatrixP1(((S,), (T,)), source_degrees=(1,), target_degrees=(0, 0))
    assert cokernel_splitting(matrix) == SplittingType((1,))
    assert coker_profile(matrix) == SplittingType((1,))


def test_torsion_cokernel():
    matrix = GradedMatrixP1(((S,),), source_degrees=(1,), target_degrees=(0,))
    assert cokernel_splitting(matrix) == SplittingType((), 1)
    assert coker_profile(matrix) == SplittingType((), 1)


def test_cokernel_needs_injective_map():
    zero = BinaryForm.zero(1)
    matrix = GradedMatrixP1(((zero,), (zero,)), source_degrees=(1,), target_degrees=(0, 0))
    with pytest.raises(PreconditionError):
        cokernel_splitting(matrix)
    with pytest.raises(PreconditionError):
        coker_profile(matrix)


def test_wrong_entry_degree_rejected():
    with pytest.raises(PreconditionError):
        GradedMatrixP1(((S * S,),), source_degrees=(1,), target_degrees=(0,))


def test_restrict_matrix_of_koszul_column():
    rows = [[parse_form("x0")], [parse_form("x1")], [parse_form("x2")]]
    restricted = restrict_matrix(rows, (1,), (0, 0, 0), LineP2((1, 1, 1)))
    assert restricted.generic_rank() == 1
    assert cokernel_splitting(restricted) == SplittingType((0, 1))
    assert restricted.evaluate(1, 0).shape == (3, 1)
    assert all(isinstance(value, Fraction) for value in restricted.evaluate(1, 2).flat)
