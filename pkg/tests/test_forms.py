from fractions import Fraction

import numpy
import pytest

from logtangent import Form
from logtangent import ParseError
from logtangent import PointP2
from logtangent import gradient
from logtangent import parse_form
from logtangent import parse_point
from logtangent._sampling import random_form
from logtangent._sampling import random_point


def test_parse_and_print_canonical():
    form = parse_form("x^3-y^3+1/2*z^3")
    assert form.degree == 3
    assert form.to_string() == "x0^3-x1^3+1/2*x2^3"
    assert parse_form(str(form)) == form


def test_parse_parentheses_and_powers():
    assert parse_form("(x0+x1)^2") == parse_form("x0^2+2*x0*x1+x1^2")
    assert parse_form("x*y+y*z+z*x") == parse_form("x0*x1+x1*x2+x0*x2")


@pytest.mark.parametrize("text", ["x^2+y", "w^2", "x^2/y", "x^", "1/0*x"])
def test_parse_errors(text: str):
    with pytest.raises(ParseError):
        parse_form(text)


def test_declared_degree_mismatch():
    with pytest.raises(ParseError):
        parse_form("x^2", degree=3)
    assert parse_form("0", degree=2).is_zero


def test_points_are_normalized():
    assert PointP2((-2, -4, 0)) == PointP2((1, 2, 0))
    assert parse_point("[1/2:1:0]") == PointP2((1, 2, 0))
    assert PointP2.from_rationals(Fraction(1, 3), Fraction(1, 2), 0) == PointP2((2, 3, 0))
    with pytest.raises(ParseError):
        parse_point("[0:0:0]")
    with pytest.raises(ParseError):
        parse_point("(1,2,3)")


def test_euler_identity(rng: numpy.random.Generator):
    for _ in range(1000):
        degree = int(rng.integers(1, 5))
        form = random_form(rng, degree)
        point = random_point(rng, bound=5)
        partials = gradient(form)
        euler = sum(x * p.evaluate(point.coordinates) for x, p in zip(point, partials))
        assert euler == degree * form.evaluate(point.coordinates)


def test_product_evaluates_as_product(rng: numpy.random.Generator):
    for _ in range(50):
        f = random_form(rng, 2)
        g = random_form(rng, 3)
        point = random_point(rng, bound=5).coordinates
        assert (f * g).evaluate(point) == f.evaluate(point) * g.evaluate(point)
        assert (f * g).degree == 5


def test_substitute_linear_map():
    x0, x1, x2 = (Form.variable(i) for i in range(3))
    form = x0 * x1 - x2**2
    swapped = form.substitute([x1, x0, x2])
    assert swapped == form
    shifted = form.substitute([x0 + x1, x1, x2])
    assert shifted == x0 * x1 + x1**2 - x2**2


def test_primitive():
    form = parse_form("-2*x0+4*x1")
    assert form.primitive() == parse_form("x0-2*x1")
    assert parse_form("1/2*x0+1/3*x1").primitive() == parse_form("3*x0+2*x1")


def test_mismatched_degrees_rejected():
    with pytest.raises(ValueError):
        parse_form("x0") + parse_form("x0^2")
