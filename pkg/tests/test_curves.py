import pytest

from logtangent import ChernPair
from logtangent import Form
from logtangent import LineP2
from logtangent import ParseError
from logtangent import PlaneCurve
from logtangent import PointP2
from logtangent import PointedCurve
from logtangent import PreconditionError
from logtangent import SplittingType
from logtangent import chern_generalized
from logtangent import ideal_of_points
from logtangent import key_restriction_degrees
from logtangent import logtangent_presentation
from logtangent import parse_curve
from logtangent import parse_form
from logtangent import parse_pointed_curve
from logtangent import tangent_line
from logtangent._sampling import random_lines
from logtangent._sampling import random_point


@pytest.mark.parametrize(
    "text, smooth",
    [
        ("x^3+y^3+z^3", True),
        ("x*y+y*z+z*x", True),
        ("x*y*z", False),
        ("x^2+y^2", False),
        ("x^3+y^3+z^3+3*x*y*z", True),
        ("x^3+y^3+z^3-3*x*y*z", False),
        ("y^2*z-x^3", False),
        ("x0+x1", True),
    ],
)
def test_smoothness(text: str, smooth: bool):
    assert parse_curve(text).smooth is smooth


def test_assumed_smoothness_is_conditional():
    curve = parse_curve("x^4+y^4+z^4", assume_smooth=True)
    assert curve.smooth and curve.conditional
    assert not parse_curve("x^4+y^4+z^4").conditional


def test_chern_generalized():
    assert chern_generalized(2, 3) == ChernPair(-1, 4)
    assert chern_generalized(3, 0).c1 == 0 and chern_generalized(3, 0).c2 == 3
    assert (chern_generalized(3, 1).c1, chern_generalized(3, 1).c2) == (0, 4)
    with pytest.raises(PreconditionError):
        chern_generalized(0, 1)


def test_fermat_log_tangent():
    curve = parse_curve("x^3+y^3+z^3")
    presentation, basis = logtangent_presentation(curve)
    assert (presentation.chern.c1, presentation.chern.c2) == (0, 3)
    assert presentation.twist == -1
    assert len(basis) >= 2
    presentation.check_euler()
    assert presentation.restricted_splitting(LineP2((1, 2, 3))) == SplittingType((0, 0))
    assert presentation.restricted_splitting(LineP2((0, 1, 2))) == SplittingType((-1, 1))


def test_singular_curve_rejected():
    with pytest.raises(PreconditionError):
        logtangent_presentation(parse_curve("x*y*z"))


def _conic_through(rng, points):
    conics = [form for form in ideal_of_points(points) if form.degree == 2]
    total = Form.zero(2)
    for form in conics:
        total = total + int(rng.integers(1, 10)) * form
    return total


def test_conic_is_uniform(rng):
    pointed = []
    while len(pointed) < 10:
        points = [random_point(rng, bound=10) for _ in range(3)]
        if len(set(points)) < 3:
            continue
        form = _conic_through(rng, points)
        if form.is_zero:
            continue
        curve = PlaneCurve.from_form(form)
        if curve.smooth:
            pointed.append((curve, points))
    for conic, points in pointed:
        presentation, _ = logtangent_presentation(conic)
        assert (presentation.chern.c1, presentation.chern.c2) == (1, 1)
        tangents = [tangent_line(conic, point) for point in points]
        for line in random_lines(rng, 100) + tangents:
            splitting = presentation.restricted_splitting(line)
            assert splitting == SplittingType((0, 1))
            assert splitting.degree == presentation.chern.c1


def test_pointed_curve():
    pointed = parse_pointed_curve("x*y+y*z+z*x\n[1:0:0]\n# comment\n[0:1:0]\n")
    assert pointed.points == (PointP2((1, 0, 0)), PointP2((0, 1, 0)))
    with pytest.raises(PreconditionError):
        PointedCurve(pointed.curve, (PointP2((1, 1, 1)),))
    with pytest.raises(PreconditionError):
        PointedCurve(pointed.curve, (PointP2((1, 0, 0)), PointP2((2, 0, 0))))
    with pytest.raises(ParseError):
        parse_pointed_curve("\n# nothing\n")


def test_curve_needs_a_form_of_positive_degree():
    with pytest.raises(PreconditionError):
        PlaneCurve.from_form(parse_form("3"))


def test_key_restriction_degrees():
    conic_line = [key_restriction_degrees(1, support) for support in (1, 2)]
    assert [item.pair for item in conic_line] == [(1, 0), (0, 1)]
    assert all(item.forced for item in conic_line)
    far = key_restriction_degrees(0, 4)
    assert far.pair == (-2, 2) and not far.forced
    with pytest.raises(PreconditionError):
        key_restriction_degrees(1, 0)
