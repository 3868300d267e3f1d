import pytest

from logtangent import LineP2
from logtangent import PointP2
from logtangent import PreconditionError
from logtangent.blowup import LINE
from logtangent.blowup import MemberKind
from logtangent.blowup import PicClass
from logtangent.blowup import classify_pencil_member
from logtangent.blowup import general_position


def _on_cubic(*parameters: int) -> list[PointP2]:
    """
    Points ``[1:t:t³]``: three are collinear exactly when their parameters
    add up to zero, six lie on a conic exactly when theirs do.
    """
    return [PointP2((1, t, t**3)) for t in parameters]


POINTS = _on_cubic(1, 2, 3, 4, 5, 6)


def test_general_points():
    result = general_position(POINTS)
    assert result
    assert result.to_dict() == {"general": True, "witness": "", "indices": []}


def test_collinear_points():
    result = general_position(_on_cubic(1, 2, 3, 4, 5, -3))
    assert not result
    assert result.witness == "p1, p2, p6 are collinear"
    assert result.indices == (1, 2, 6)


def test_points_on_a_conic():
    result = general_position(_on_cubic(1, 2, 3, 4, 5, -15))
    assert not result
    assert result.witness == "the six points lie on a conic"


def test_repeated_point():
    result = general_position(_on_cubic(1, 1, 3, 4, 5, 6))
    assert result.witness == "p1 = p2"
    assert result.indices == (1, 2)


def test_general_position_needs_six_points():
    with pytest.raises(PreconditionError):
        general_position(POINTS[:5])


def test_pencil_members():
    secant = classify_pencil_member(LineP2.through(POINTS[0], POINTS[1]), POINTS)
    assert secant.kind is MemberKind.three_lines
    assert str(secant) == "ThreeLines(1,2)"
    assert secant.components == (
        LINE - PicClass.exceptional(1, 2),
        PicClass.exceptional(1),
        PicClass.exceptional(2),
    )

    through_one = classify_pencil_member(LineP2((1, -1, 0)), POINTS)
    assert str(through_one) == "ConicPlusLine(1)"
    assert through_one.components == (LINE - PicClass.exceptional(1), PicClass.exceptional(1))

    cubic = classify_pencil_member(LineP2((0, 0, 1)), POINTS)
    assert str(cubic) == "TwistedCubic"
    assert cubic.components == (LINE,)


def test_components_add_up_to_a_line():
    for line in [LineP2.through(POINTS[2], POINTS[5]), LineP2((1, -3, 0)), LineP2((2, -1, 0))]:
        member = classify_pencil_member(line, POINTS)
        total = member.components[0]
        for component in member.components[1:]:
            total = total + component
        assert total == LINE


def test_pencil_member_needs_general_points():
    with pytest.raises(PreconditionError):
        classify_pencil_member(LineP2((0, 0, 1)), _on_cubic(1, 2, 3, 4, 5, -3))
