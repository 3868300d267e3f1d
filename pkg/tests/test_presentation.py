import pytest

from logtangent import ChernPair
from logtangent import GradedPresentation
from logtangent import LineP2
from logtangent import ParseError
from logtangent import PointP2
from logtangent import PreconditionError
from logtangent import PresentationRole
from logtangent import SplittingType
from logtangent import VerificationError
from logtangent import parse_form
from logtangent import parse_presentation


@pytest.fixture
def tangent_bundle() -> GradedPresentation:
    """
    The tangent bundle of the plane, its twist by -1 presented by the Euler
    column.
    """
    return GradedPresentation(
        rows=[[parse_form("x0")], [parse_form("x1")], [parse_form("x2")]],
        source_degrees=(1,),
        target_degrees=(0, 0, 0),
        role=PresentationRole.cokernel,
        rank=2,
        chern=ChernPair(3, 3),
        twist=-1,
    )


def test_chern_twist():
    assert ChernPair(3, 3).twisted(-1) == ChernPair(1, 1)
    assert ChernPair(1, 1).twisted(1) == ChernPair(3, 3)
    assert ChernPair(0, 0).euler_characteristic(2) == 2


def test_chern_from_degrees(tangent_bundle: GradedPresentation):
    assert tangent_bundle.chern_from_degrees() == ChernPair(3, 3)
    tangent_bundle.check_chern()


def test_wrong_chern_metadata(tangent_bundle: GradedPresentation):
    wrong = GradedPresentation(
        rows=tangent_bundle.rows,
        source_degrees=(1,),
        target_degrees=(0, 0, 0),
        role=PresentationRole.cokernel,
        rank=2,
        chern=ChernPair(3, 2),
        twist=-1,
    )
    with pytest.raises(VerificationError):
        wrong.check_chern()


def test_hilbert_function_matches_euler(tangent_bundle: GradedPresentation):
    assert tangent_bundle.hilbert_function(0) == 3
    assert tangent_bundle.hilbert_function(1) == 8
    assert tangent_bundle.check_euler() == [15, 24, 35, 48]


def test_restriction_of_tangent_bundle(tangent_bundle: GradedPresentation):
    for line in [LineP2((1, 0, 0)), LineP2((1, 2, 3)), LineP2((4, -1, 7))]:
        assert tangent_bundle.restricted_splitting(line) == SplittingType((1, 2))
        assert tangent_bundle.restricted_splitting(line, profile=True) == SplittingType((1, 2))


def test_normalized(tangent_bundle: GradedPresentation):
    normalized = tangent_bundle.normalized()
    assert normalized.chern == ChernPair(-1, 1)
    assert normalized.restricted_splitting(LineP2((1, 2, 3))) == SplittingType((-1, 0))


def test_ranks(tangent_bundle: GradedPresentation):
    assert tangent_bundle.generic_rank() == 1
    assert tangent_bundle.presented_rank() == 2
    assert tangent_bundle.rank_at(PointP2((1, 0, 0))) == 1
    assert tangent_bundle.is_locally_free_at(PointP2((2, 3, 5)))


def test_invalid_entry_degree():
    with pytest.raises(PreconditionError):
        GradedPresentation(
            rows=[[parse_form("x0^2")]],
            source_degrees=(1,),
            target_degrees=(0,),
            role=PresentationRole.cokernel,
            rank=0,
            chern=ChernPair(0, 0),
        )


def test_text_round_trip(tangent_bundle: GradedPresentation):
    text = tangent_bundle.to_text(["made by hand", "second note"])
    assert text.splitlines()[0] == (
        "presentation role=cokernel rank=2 c1=3 c2=3 twist=-1 source=1 target=0,0,0"
    )
    parsed, comments = parse_presentation(text)
    assert comments == ["made by hand", "second note"]
    assert parsed.rows == tangent_bundle.rows
    assert parsed.chern == tangent_bundle.chern
    assert parsed.twist == -1


@pytest.mark.parametrize(
    "text",
    [
        "x0\nx1\n",
        "presentation role=cokernel rank=2 c1=3 c2=3 source=1 target=0,0,0\nx0\nx1\n",
        "presentation role=other rank=2 c1=3 c2=3 source=1 target=0\nx0\n",
        "presentation role=cokernel rank=2 c1=3 c2=3 source=1 target=0\nx0^2\n",
    ],
)
def test_malformed_presentation(text: str):
    with pytest.raises(ParseError):
        parse_presentation(text)
