import math

import pytest

from logtangent import CUBIC_MARKED_POINT
from logtangent import ChernPair
from logtangent import LineP2
from logtangent import PointP2
from logtangent import PointedCurve
from logtangent import PreconditionError
from logtangent import cubic_point_matrix
from logtangent import generalized_log_presentation
from logtangent import jumping_curve_cubic
from logtangent import jumping_report_cubic
from logtangent import jumping_test
from logtangent import parse_curve
from logtangent import triangle_vertex_test
from logtangent import triple_tangent_pencil
from logtangent._forms import DUAL_VARIABLES

COORDINATE_LINES = [LineP2((1, 0, 0)), LineP2((0, 1, 0)), LineP2((0, 0, 1))]


@pytest.mark.parametrize(
    "text",
    [
        "x^3+y^3+z^3",
        "x^3-y^3+z^3",
        "x^3-y^3+2*z^3",
        "x^3-y^3+3*z^3",
        "x^3-y^3+1/2*z^3",
    ],
)
def test_triangle_of_jumping_lines(text: str):
    curve = parse_curve(text)
    assert jumping_curve_cubic(curve).to_string(DUAL_VARIABLES) == "a0*a1*a2"
    for line in COORDINATE_LINES:
        assert triangle_vertex_test(curve, line)
    assert not triangle_vertex_test(curve, LineP2((1, 1, 0)))
    assert not triangle_vertex_test(curve, LineP2((1, 2, 3)))


def test_hesse_cubic_has_no_triangle():
    curve = parse_curve("x^3+y^3+z^3+3*x*y*z")
    dual = jumping_curve_cubic(curve)
    assert dual.degree == 3
    assert dual.to_string(DUAL_VARIABLES) != "a0*a1*a2"
    for line in COORDINATE_LINES:
        assert not triangle_vertex_test(curve, line)


def test_jumping_curve_needs_smooth_cubic():
    with pytest.raises(PreconditionError):
        jumping_curve_cubic(parse_curve("x*y*z"))
    with pytest.raises(PreconditionError):
        jumping_curve_cubic(parse_curve("x*y+z^2"))


def test_report_agrees_with_dual_cubic():
    curve = parse_curve("x^3+y^3+z^3")
    report = jumping_report_cubic(curve, COORDINATE_LINES, samples=20)
    assert all(verdict.jumping for verdict in report.candidate_verdicts)
    assert len(report.control_verdicts) == 20
    for verdict in report.tested:
        product = math.prod(verdict.line.coordinates)
        assert verdict.jumping == (product == 0)


def test_marked_point_matrix():
    presentation = cubic_point_matrix()
    assert presentation.chern == ChernPair(0, 4)
    assert presentation.rank_at(CUBIC_MARKED_POINT) < 2
    assert presentation.rank_at(PointP2((1, 2, 3))) == 2
    for line in COORDINATE_LINES:
        assert jumping_test(presentation, 0, line).jumping


def test_lines_meeting_cubic_once():
    pencil = triple_tangent_pencil(parse_curve("x^3-y^3+z^3"), PointP2((0, 0, 1)))
    assert pencil.lines == (LineP2((1, -1, 0)),)
    assert pencil.polynomial == (1, 0, 0, -1)
    assert not pencil.at_infinity
    assert pencil.count == 3


def test_lines_meeting_cubic_once_needs_point_off_curve():
    with pytest.raises(PreconditionError):
        triple_tangent_pencil(parse_curve("x^3-y^3+z^3"), PointP2((1, 1, 0)))


@pytest.mark.parametrize("a", [1, 2, 3])
def test_marked_point_matrix_matches_horseshoe(a: int):
    fixed = cubic_point_matrix()
    curve = parse_curve(f"x^3-y^3+{a}*z^3")
    built = generalized_log_presentation(PointedCurve(curve, (CUBIC_MARKED_POINT,)))
    assert built.chern == fixed.chern
    for t in range(-1, 5):
        assert built.hilbert_function(t) == fixed.hilbert_function(t)
