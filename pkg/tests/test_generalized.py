import pytest

from logtangent import ChernPair
from logtangent import LineP2
from logtangent import PointP2
from logtangent import PointedCurve
from logtangent import PreconditionError
from logtangent import generalized_log_presentation
from logtangent import hilbert_burch_matrix
from logtangent import ideal_of_points
from logtangent import jumping_set_pointed_conic
from logtangent import jumping_test
from logtangent import fixed_steiner_matrix
from logtangent import parse_curve
from logtangent import sextic_jumping_tangents
from logtangent import steiner_conic_points
from logtangent import tangent_line
from logtangent import tangent_lines_through
from logtangent._generalized import geometric_candidates
from logtangent._sampling import random_lines
from logtangent._sampling import random_point

COORDINATE_POINTS = (PointP2((1, 0, 0)), PointP2((0, 1, 0)), PointP2((0, 0, 1)))


@pytest.fixture(scope="module")
def conic():
    return parse_curve("x0*x1+x1*x2+x2*x0")


@pytest.fixture(scope="module")
def steiner(conic):
    return steiner_conic_points(conic, COORDINATE_POINTS)


def test_ideal_of_coordinate_points():
    generators = ideal_of_points(COORDINATE_POINTS)
    assert [form.degree for form in generators] == [2, 2, 2]
    for form in generators:
        assert all(form.evaluate(point.coordinates) == 0 for point in COORDINATE_POINTS)
    forms, relations = hilbert_burch_matrix(COORDINATE_POINTS)
    assert len(forms) == 3
    assert relations.degrees == (3, 3)


def test_ideal_of_points_preconditions():
    with pytest.raises(PreconditionError):
        ideal_of_points([])
    with pytest.raises(PreconditionError):
        ideal_of_points([PointP2((1, 0, 0)), PointP2((2, 0, 0))])


def test_steiner_shape_and_chern(steiner):
    assert steiner.source_degrees == (3, 3, 3)
    assert steiner.target_degrees == (2, 2, 2, 2, 2)
    assert steiner.chern == ChernPair(-1, 4)
    assert steiner.presented_rank() == 2
    steiner.check_chern()
    steiner.check_euler()


def test_steiner_singular_locus(steiner):
    for point in COORDINATE_POINTS:
        assert steiner.rank_at(point) < 3
    for point in [PointP2((1, 2, 3)), PointP2((1, 1, 1)), PointP2((2, 2, -1))]:
        assert steiner.rank_at(point) == 3


@pytest.mark.parametrize("a, b", [(1, 2), (2, 5), (3, 7)])
def test_fixed_matrix_matches_steiner(conic, steiner, rng, a, b):
    fixed = fixed_steiner_matrix(a, b)
    assert fixed.chern == steiner.chern
    for t in range(-1, 5):
        assert fixed.hilbert_function(t) == steiner.hilbert_function(t)

    for point in COORDINATE_POINTS:
        assert fixed.rank_at(point) == 2
    points = [PointP2((1, 2, 3)), PointP2((1, 1, 1)), PointP2((2, 2, -1))]
    points += [random_point(rng) for _ in range(10)]
    for point in points:
        assert fixed.rank_at(point) == steiner.rank_at(point) == 3

    candidates = geometric_candidates(PointedCurve(conic, COORDINATE_POINTS))
    controls = random_lines(rng, 10, exclude=candidates)
    for line in candidates:
        assert jumping_test(fixed, -1, line).jumping
    for line in list(candidates) + controls:
        verdict = jumping_test(fixed, -1, line)
        assert verdict.jumping == jumping_test(steiner, -1, line).jumping


def test_steiner_jumping_set(conic, steiner):
    pointed = PointedCurve(conic, COORDINATE_POINTS)
    report = jumping_set_pointed_conic(steiner, pointed, samples=40)
    expected = {
        LineP2((1, 0, 0)),
        LineP2((0, 1, 0)),
        LineP2((0, 0, 1)),
        LineP2((1, 1, 0)),
        LineP2((1, 0, 1)),
        LineP2((0, 1, 1)),
    }
    assert set(report.certified_jumping_set) == expected
    assert len(report.control_verdicts) == 40


def test_four_marked_points(conic):
    points = COORDINATE_POINTS + (PointP2((2, 2, -1)),)
    pointed = PointedCurve(conic, points)
    presentation = generalized_log_presentation(pointed)
    assert presentation.chern == ChernPair(-1, 5)
    candidates = geometric_candidates(pointed)
    assert len(candidates) == 10
    report = jumping_set_pointed_conic(presentation, pointed, samples=10)
    assert set(report.certified_jumping_set) == set(candidates)


def test_steiner_preconditions(conic):
    with pytest.raises(PreconditionError):
        steiner_conic_points(conic, COORDINATE_POINTS[:2])
    with pytest.raises(PreconditionError):
        steiner_conic_points(conic, (PointP2((1, 0, 0)),) * 3)
    with pytest.raises(PreconditionError):
        steiner_conic_points(conic, COORDINATE_POINTS[:2] + (PointP2((1, 1, 1)),))


def test_tangent_lines(conic):
    assert tangent_line(conic, PointP2((1, 0, 0))) == LineP2((0, 1, 1))
    tangents = tangent_lines_through(conic, PointP2((1, 1, 1)))
    assert tangents.count == 2
    with pytest.raises(PreconditionError):
        tangent_lines_through(conic, PointP2((1, 0, 0)))


def test_twelve_tangents(conic):
    points = [
        PointP2((1, 1, 1)),
        PointP2((1, 2, 3)),
        PointP2((1, 1, 2)),
        PointP2((1, 2, 2)),
        PointP2((2, 1, 1)),
        PointP2((1, 3, 1)),
    ]
    pencils = sextic_jumping_tangents(conic, points)
    assert len(pencils) == 6
    assert sum(pencil.count for pencil in pencils) == 12
    for pencil in pencils:
        for line in pencil.lines:
            assert line.contains(pencil.center)
