import itertools
import math

import pytest

from logtangent import Arrangement
from logtangent import ChernPair
from logtangent import LineP2
from logtangent import ParseError
from logtangent import PointP2
from logtangent import PreconditionError
from logtangent import SplittingType
from logtangent import arrangement_chern
from logtangent import arrangement_presentation
from logtangent import freeness_certificate
from logtangent import parse_arrangement
from logtangent._arrangement import arrangement_multiplicity
from logtangent._sampling import random_lines

BRAID = "x; y; z; x-y; x-z; y-z"


def _pencil(m: int) -> Arrangement:
    return Arrangement(tuple(LineP2((1, k, 0)) for k in range(m)))


def test_parse_mixed_syntax():
    arrangement = parse_arrangement("x0; [0:1:0]\n# third\nx2\n")
    assert arrangement.size == 3
    assert arrangement.lines[1] == LineP2((0, 1, 0))
    with pytest.raises(ParseError):
        parse_arrangement("")
    with pytest.raises(ParseError):
        parse_arrangement("x^2")
    with pytest.raises(PreconditionError):
        parse_arrangement("x; 2*x")


def test_multiple_points_of_braid_arrangement():
    arrangement = parse_arrangement(BRAID)
    counts = sorted(s for _, s in arrangement.multiple_points)
    assert counts == [2, 2, 2, 3, 3, 3, 3]
    assert dict(arrangement.multiple_points)[PointP2((1, 1, 1))] == 3
    assert arrangement_multiplicity(arrangement) == 3


def test_chern_classes():
    assert arrangement_chern(parse_arrangement("x; y; z; x+y+z")) == ChernPair(-1, 1)
    assert arrangement_chern(_pencil(5)) == ChernPair(-2, -3)
    assert arrangement_chern(parse_arrangement(BRAID)) == ChernPair(-3, 2)


def test_multiplicity():
    assert arrangement_multiplicity(_pencil(5)) == 5
    assert arrangement_multiplicity(parse_arrangement("x; y; z; x+y+z")) == 2


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7])
def test_pencil_is_free(m: int):
    verdict = freeness_certificate(_pencil(m))
    assert verdict.free
    assert verdict.pair == (1, 2 - m)
    assert str(verdict) == f"Free(1,{2 - m})"


def test_braid_arrangement_is_free():
    verdict = freeness_certificate(parse_arrangement(BRAID))
    assert verdict.free
    assert verdict.splitting == SplittingType((-1, -2))
    assert verdict.criterion == "2m(D) = m"


def test_near_pencil_is_free():
    # the line pq, two more lines through p=[0:0:1] and two through q=[0:1:0]
    arrangement = parse_arrangement("x; y; x-y; z; x-z")
    verdict = freeness_certificate(arrangement)
    assert verdict.free
    assert sum(verdict.pair) == arrangement_chern(arrangement).c1


def test_generic_arrangement_unknown():
    verdict = freeness_certificate(parse_arrangement("x; y; z; x+y+z"))
    assert not verdict.free
    assert str(verdict) == "Unknown"
    assert verdict.to_dict() == {"verdict": "unknown", "pair": None, "criterion": ""}


def test_chern_against_incidence_count(rng):
    for _ in range(25):
        lines = random_lines(rng, int(rng.integers(3, 7)), bound=3)
        arrangement = Arrangement(tuple(lines))
        m = arrangement.size
        incidences = {}
        for first, second in itertools.combinations(lines, 2):
            point = first.meet(second)
            incidences[point] = sum(1 for line in lines if line.contains(point))
        c2 = sum(s - 1 for s in incidences.values()) + 3 - 2 * m
        assert arrangement_chern(arrangement) == ChernPair(3 - m, c2)
        pairs = sum(math.comb(s, 2) for s in incidences.values())
        assert pairs == math.comb(m, 2)


def test_presentation_splitting_on_generic_line():
    presentation = arrangement_presentation(parse_arrangement("x; y; z"))
    assert presentation.chern == ChernPair(0, 0)
    assert presentation.restricted_splitting(LineP2((1, 2, 3))) == SplittingType((0, 0))
    braid = arrangement_presentation(parse_arrangement(BRAID))
    assert braid.restricted_splitting(LineP2((1, 3, 7))) == SplittingType((-2, -1))
