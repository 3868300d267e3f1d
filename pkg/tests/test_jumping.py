from fractions import Fraction

import pytest

from logtangent import LineP2
from logtangent import PointP2
from logtangent import PreconditionError
from logtangent import SplittingType
from logtangent import VerificationError
from logtangent import build_jumping_report
from logtangent import certify_pencil
from logtangent import jumping_test
from logtangent import logtangent_presentation
from logtangent import parse_curve
from logtangent import parse_form
from logtangent._forms import DUAL_VARIABLES
from logtangent._jumping import pencil_axis
from logtangent._jumping import pencil_line


@pytest.fixture(scope="module")
def fermat():
    presentation, _ = logtangent_presentation(parse_curve("x^3+y^3+z^3"))
    return presentation


def test_fermat_verdicts(fermat):
    jumping = jumping_test(fermat, 0, LineP2((0, 1, 2)))
    assert jumping.jumping and jumping.order == 1
    assert jumping.splitting == SplittingType((-1, 1))
    generic = jumping_test(fermat, 0, LineP2((1, 2, 3)))
    assert not generic.jumping and generic.order == 0
    assert generic.to_dict()["splitting"] == {"degrees": [0, 0], "torsion": 0}


def test_normalization_required(fermat):
    with pytest.raises(PreconditionError):
        jumping_test(fermat, 1, LineP2((1, 2, 3)))
    with pytest.raises(PreconditionError):
        jumping_test(fermat, -1, LineP2((1, 2, 3)))


def test_report_with_dual_curve(fermat):
    dual = parse_form("a0*a1*a2", variables=DUAL_VARIABLES)
    report = build_jumping_report(
        fermat,
        0,
        candidates=[LineP2((1, 0, 0)), LineP2((0, 1, 2))],
        controls=[LineP2((1, 2, 3)), LineP2((2, -1, 5))],
        dual_curve=dual,
    )
    assert report.certified_jumping_set == (LineP2((1, 0, 0)), LineP2((0, 1, 2)))
    assert len(report.candidate_verdicts) == 2
    assert not any(verdict.jumping for verdict in report.control_verdicts)
    assert report.to_dict()["dual_curve"] == "a0*a1*a2"
    assert report.text_lines()[0] == "completeness: sampled"


def test_report_rejects_inconsistent_dual_curve(fermat):
    with pytest.raises(VerificationError):
        build_jumping_report(
            fermat,
            0,
            candidates=[LineP2((0, 1, 2))],
            dual_curve=parse_form("a0^3+a1^3+a2^3", variables=DUAL_VARIABLES),
        )


def test_pencil_parametrization():
    center = PointP2((1, 2, 5))
    q1, q2 = pencil_axis(center)
    assert (q1, q2) == (PointP2((0, 1, 0)), PointP2((0, 0, 1)))
    for value in [Fraction(0), Fraction(5, 2), None]:
        assert pencil_line(center, q1, q2, value).contains(center)


def test_certified_pencil(fermat):
    pencil = certify_pencil(fermat, PointP2((1, 2, 5)), 0)
    assert not pencil.everywhere
    assert pencil.at_infinity
    assert pencil.count == 3
    assert set(pencil.lines) == {LineP2((0, 5, -2)), LineP2((5, 0, -1)), LineP2((2, -1, 0))}


def test_pencil_of_jumping_lines(fermat):
    pencil = certify_pencil(fermat, PointP2((0, 0, 1)), 0)
    assert pencil.everywhere
    assert pencil.polynomial_text() == "0"
