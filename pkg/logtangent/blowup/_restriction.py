"""
Restrictions of the logarithmic cotangent sheaf of the cubic surface to
rational curves, and the linear constraint rows they impose on a
destabilizing line bundle ``O(N)``, ``N = (a;b1,..,b6)``.

A line subbundle of a rank 2 bundle on ``P^1`` has degree at most the larger
twist of the two line bundles in an extension presenting it, so every curve
``C`` meeting a destabilizer nontrivially gives ``C·N <= bound``.
"""
import dataclasses
import enum
import itertools
import logging
import re
from fractions import Fraction
from typing import Optional

from .._curves import KeyRestriction
from .._curves import key_restriction_degrees
from .._errors import ParseError
from .._errors import PreconditionError
from .._p1split import SplittingType
from ._picard import CANONICAL
from ._picard import HYPERPLANE
from ._picard import LINE
from ._picard import POINT_COUNT
from ._picard import PicClass
from ._picard import conic_through
from ._picard import exceptional
from ._picard import genus
from ._picard import line_through
from ._picard import parse_class
from ._picard import residual_conic_line
from ._picard import slope_log

LOGGER = logging.getLogger(__name__)


def omega_restriction(curve: PicClass) -> SplittingType:
    """
    Splitting ``O(-2) ⊕ O(-C²)`` of the cotangent sheaf of the surface on a
    smooth rational curve with ``C² <= 3``.

    Raises:
        PreconditionError: if the curve is not rational or ``C² > 3``.
    """
    if genus(curve) != 0:
        raise PreconditionError(f"{curve} has genus {genus(curve)}, not a rational curve")
    if curve.square > 3:
        raise PreconditionError(f"{curve} has self-intersection {curve.square} > 3")
    return SplittingType((-2, -curve.square))


def tangent_first_chern(divisor: PicClass) -> PicClass:
    """
    ``c1(T_S(-log D)) = -K - D``.
    """
    return -CANONICAL - divisor


def key_splitting_on_S(divisor: PicClass, curve: PicClass, support: int) -> KeyRestriction:
    """
    Degrees of the sub line bundle and of the quotient of the logarithmic
    tangent sheaf ``T_S(-log D)`` restricted to a rational curve meeting
    ``D`` in ``support`` reduced points.

    Raises:
        PreconditionError: for a non-rational curve or an empty support.
    """
    if genus(curve) != 0:
        raise PreconditionError(f"{curve} has genus {genus(curve)}, not a rational curve")
    return key_restriction_degrees(tangent_first_chern(divisor).dot(curve), support)


def cotangent_pair(restriction: KeyRestriction) -> tuple[int, int]:
    """
    Twists of the dual, logarithmic cotangent, restriction.
    """
    return -restriction.sub, -restriction.quotient


class CurveFamily(enum.Enum):
    exceptional = enum.auto()
    line = enum.auto()
    line_through_point = enum.auto()
    line_through_two_points = enum.auto()
    conic = enum.auto()
    residual_conic_line = enum.auto()

    @property
    def tag(self) -> str:
        return _FAMILY_TAGS[self]


_FAMILY_TAGS = {
    CurveFamily.exceptional: "Ei",
    CurveFamily.line: "L",
    CurveFamily.line_through_point: "L-Ei",
    CurveFamily.line_through_two_points: "L-Ei-Ej",
    CurveFamily.conic: "2L-Ei-Ej-Ek-El",
    CurveFamily.residual_conic_line: "2L+Ei-sum(E)",
}


@dataclasses.dataclass(frozen=True)
class FamilyMember:
    family: CurveFamily

    indices: tuple[int, ...]

    curve: PicClass

    @property
    def name(self) -> str:
        if self.family is CurveFamily.line:
            return "L"
        if self.family is CurveFamily.residual_conic_line:
            return f"Lhat{self.indices[0]}"
        return self.curve.to_sum().replace(" ", "")


def family_members(family: CurveFamily) -> list[FamilyMember]:
    points = range(1, POINT_COUNT + 1)
    if family is CurveFamily.exceptional:
        return [FamilyMember(family, (i,), exceptional(i)) for i in points]
    if family is CurveFamily.line:
        return [FamilyMember(family, (), LINE)]
    if family is CurveFamily.line_through_point:
        return [FamilyMember(family, (i,), line_through((i,))) for i in points]
    if family is CurveFamily.line_through_two_points:
        return [
            FamilyMember(family, pair, line_through(pair))
            for pair in itertools.combinations(points, 2)
        ]
    if family is CurveFamily.conic:
        return [
            FamilyMember(family, quadruple, conic_through(quadruple))
            for quadruple in itertools.combinations(points, 4)
        ]
    return [FamilyMember(family, (i,), residual_conic_line(i)) for i in points]


class Relation(enum.Enum):
    le = "<="
    eq = "="
    ge = ">="


@dataclasses.dataclass(frozen=True)
class ConstraintRow:
    """
    Linear condition ``curve·N  relation  bound`` on a class ``N``.
    """

    curve: PicClass

    relation: Relation

    bound: Fraction

    provenance: str = ""

    family: str = ""
    """
    Tag grouping the rows of one curve family, used to report annotations.
    """

    def __post_init__(self):
        object.__setattr__(self, "bound", Fraction(self.bound))

    def value(self, candidate: PicClass) -> int:
        return self.curve.dot(candidate)

    def satisfied_by(self, candidate: PicClass) -> bool:
        value = self.value(candidate)
        if self.relation is Relation.le:
            return value <= self.bound
        if self.relation is Relation.ge:
            return value >= self.bound
        return value == self.bound

    def integer_rows(self) -> list[tuple[tuple[int, ...], int]]:
        """
        Equivalent rows ``Σ c_v x_v <= β`` over the integer unknowns
        ``(a, b1, .., b6)``.
        """
        coefficients = (self.curve.a,) + tuple(-value for value in self.curve.b)
        negated = tuple(-value for value in coefficients)
        upper = self.bound.numerator // self.bound.denominator
        lower = -((-self.bound.numerator) // self.bound.denominator)
        if self.relation is Relation.le:
            return [(coefficients, upper)]
        if self.relation is Relation.ge:
            return [(negated, -lower)]
        if self.bound.denominator != 1:
            return [(coefficients, upper), (negated, -upper - 1)]
        return [(coefficients, upper), (negated, -upper)]

    def inequality_text(self) -> str:
        terms = []
        names = ("a",) + tuple(f"b{i}" for i in range(1, POINT_COUNT + 1))
        coefficients = (self.curve.a,) + tuple(-value for value in self.curve.b)
        for coefficient, name in zip(coefficients, names):
            if coefficient == 0:
                continue
            magnitude = "" if abs(coefficient) == 1 else str(abs(coefficient))
            sign = "-" if coefficient < 0 else ("+" if terms else "")
            terms.append(f"{sign}{magnitude}{name}")
        return f"{''.join(terms) or '0'} {self.relation.value} {self.bound}"

    def to_text(self) -> str:
        comment = f"  # {self.provenance}" if self.provenance else ""
        return f"{self.curve.to_compact()} {self.relation.value} {self.bound}{comment}"

    def to_dict(self) -> dict:
        return {
            "class": self.curve.to_compact(),
            "relation": self.relation.value,
            "bound": str(self.bound),
            "inequality": self.inequality_text(),
            "provenance": self.provenance,
            "family": self.family,
        }


def slope_row(divisor: PicClass, strict: bool = False) -> ConstraintRow:
    """
    ``H·N >= μ``, or ``H·N >= floor(μ) + 1`` for strict destabilizers.
    """
    mu = slope_log(divisor)
    bound = Fraction(mu.numerator // mu.denominator + 1) if strict else mu
    return ConstraintRow(
        curve=HYPERPLANE,
        relation=Relation.ge,
        bound=bound,
        provenance=f"slope {'>' if strict else '>='} {mu}",
        family="slope",
    )


_ROW_PATTERN = re.compile(r"^(?P<cls>.+?)\s*(?P<rel><=|>=|=)\s*(?P<bound>-?\d+(?:/\d+)?)$")


def parse_constraint_rows(text: str) -> list[ConstraintRow]:
    """
    One row per line, ``class <= bound # provenance``; blank lines and lines
    starting with ``#`` are skipped.

    Raises:
        ParseError: on a malformed line.
    """
    rows = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        body = body.strip()
        if not body:
            continue
        match = _ROW_PATTERN.match(body)
        if not match:
            raise ParseError(f"line {number}: malformed constraint '{raw.strip()}'")
        try:
            curve = parse_class(match.group("cls"))
        except ParseError as error:
            raise ParseError(f"line {number}: {error}") from error
        rows.append(
            ConstraintRow(
                curve=curve,
                relation=Relation(match.group("rel")),
                bound=Fraction(match.group("bound")),
                provenance=comment.strip(),
                family=comment.strip(),
            )
        )
    return rows


class ScenarioKind(enum.Enum):
    generic = "generic"
    table1 = "table1"
    simple_tangent = "simple-tangent"
    bitangent = "bitangent"
    quad_tangent = "quad-tangent"


@dataclasses.dataclass(frozen=True)
class SupportAssumption:
    """
    Range of the number of reduced points in which the members of a family
    meet the divisor; the row keeps the worst bound over the range.
    ``None`` bounds stand for ``D·C``.
    """

    low: Optional[int] = None

    high: Optional[int] = None

    below_intersection: Optional[int] = None
    """
    If set, the range starts this many points below ``D·C``.
    """

    annotation: bool = False
    """
    Rows evaluated and reported on the candidates but never enforced.
    """

    def resolve(self, intersection: int) -> tuple[int, int]:
        low = intersection if self.low is None else self.low
        if self.below_intersection is not None:
            low = intersection - self.below_intersection
        high = intersection if self.high is None else self.high
        high = min(high, intersection)
        if low > high:
            raise PreconditionError(
                f"support count {low} exceeds the intersection number {intersection}"
            )
        return max(low, 1), high


TRANSVERSE = SupportAssumption()

ANY_SUPPORT = SupportAssumption(low=1)


@dataclasses.dataclass(frozen=True)
class Scenario:
    """
    Tangency hypotheses of the divisor with the standard curve families.

    ``generic`` assumes transversality everywhere and leaves out ``|L|``.
    ``table1`` adds ``|L|`` and only assumes the lines through two points and
    the six residual lines may be tangent. ``simple-tangent``, ``bitangent:i``
    and ``quad-tangent:i`` specialize the residual lines: at most one tangency
    on each, a bitangent ``Lhat_i``, or ``Lhat_i`` meeting the divisor in one
    point.
    """

    kind: ScenarioKind = ScenarioKind.generic

    index: Optional[int] = None

    @classmethod
    def get_default(cls) -> "Scenario":
        return cls()

    def __str__(self) -> str:
        return self.kind.value + (f":{self.index}" if self.index is not None else "")

    @property
    def families(self) -> tuple[CurveFamily, ...]:
        families = list(CurveFamily)
        if self.kind is ScenarioKind.generic:
            families.remove(CurveFamily.line)
        return tuple(families)

    def assumption(self, member: FamilyMember) -> SupportAssumption:
        kind = self.kind
        family = member.family
        if kind is ScenarioKind.generic or family in (
            CurveFamily.exceptional,
            CurveFamily.line,
            CurveFamily.line_through_point,
        ):
            return TRANSVERSE
        if family is CurveFamily.line_through_two_points:
            if kind is ScenarioKind.quad_tangent:
                return SupportAssumption(low=1, annotation=True)
            return ANY_SUPPORT
        if family is CurveFamily.conic:
            return ANY_SUPPORT if kind is ScenarioKind.quad_tangent else TRANSVERSE
        # residual lines
        tagged = member.indices[0] == self.index
        if kind is ScenarioKind.table1:
            return ANY_SUPPORT
        if kind is ScenarioKind.simple_tangent:
            return SupportAssumption(below_intersection=1)
        if kind is ScenarioKind.bitangent:
            return SupportAssumption(low=2, high=2) if tagged else SupportAssumption(low=2)
        return SupportAssumption(low=1, high=1) if tagged else ANY_SUPPORT


_SCENARIO_PATTERN = re.compile(r"^\s*([a-z0-9-]+)\s*(?::\s*(\d+))?\s*$")


def parse_scenario(text: str) -> Scenario:
    """
    Parse ``generic``, ``table1``, ``simple-tangent``, ``bitangent:i`` or
    ``quad-tangent:i`` with ``1 <= i <= 6``.

    Raises:
        ParseError: on an unknown tag or a missing or superfluous index.
    """
    match = _SCENARIO_PATTERN.match(text)
    if not match:
        raise ParseError(f"malformed scenario '{text}'")
    try:
        kind = ScenarioKind(match.group(1))
    except ValueError as error:
        known = ", ".join(item.value for item in ScenarioKind)
        raise ParseError(f"unknown scenario '{match.group(1)}', expected one of {known}") from error
    index = int(match.group(2)) if match.group(2) else None
    needs_index = kind in (ScenarioKind.bitangent, ScenarioKind.quad_tangent)
    if needs_index != (index is not None):
        raise ParseError(
            f"scenario '{kind.value}' {'needs' if needs_index else 'takes no'} point index"
        )
    if index is not None and not 1 <= index <= POINT_COUNT:
        raise ParseError(f"scenario index {index} outside 1..{POINT_COUNT}")
    return Scenario(kind=kind, index=index)


def restriction_bound(divisor: PicClass, curve: PicClass, low: int, high: int) -> int:
    """
    Largest degree of a line subbundle of ``Ω_S(log D)`` on the curve, over
    support counts ``low..high``.

    For a curve disjoint from the divisor the bound comes from ``Ω_S``.
    """
    if divisor.dot(curve) == 0:
        return max(omega_restriction(curve).degrees)
    bounds = []
    for support in range(low, high + 1):
        bounds.append(max(cotangent_pair(key_splitting_on_S(divisor, curve, support))))
    return max(bounds)


@dataclasses.dataclass(frozen=True)
class RestrictionTable:
    divisor: PicClass

    scenario: Scenario

    rows: tuple[ConstraintRow, ...]

    annotations: tuple[ConstraintRow, ...] = ()

    def to_dict(self) -> dict:
        return {
            "divisor": self.divisor.to_compact(),
            "scenario": str(self.scenario),
            "rows": [row.to_dict() for row in self.rows],
            "annotations": [row.to_dict() for row in self.annotations],
        }

    def text_lines(self) -> list[str]:
        lines = [f"divisor: {self.divisor.to_compact()}", f"scenario: {self.scenario}"]
        lines += [f"{row.inequality_text():<28} # {row.provenance}" for row in self.rows]
        lines += [
            f"{row.inequality_text():<28} # annotation: {row.provenance}"
            for row in self.annotations
        ]
        return lines


def restriction_table(divisor: PicClass, scenario: Optional[Scenario] = None) -> RestrictionTable:
    """
    Constraint rows ``C·N <= bound`` over the standard curve families.

    Raises:
        PreconditionError: if a family member is a component of the divisor
            or a fixed tangency exceeds the intersection number.
    """
    scenario = scenario or Scenario.get_default()
    rows = []
    annotations = []
    for family in scenario.families:
        for member in family_members(family):
            intersection = divisor.dot(member.curve)
            if intersection < 0:
                raise PreconditionError(
                    f"{member.name} meets {divisor} negatively, it is a component of the divisor"
                )
            assumption = scenario.assumption(member)
            if intersection == 0:
                low = high = 0
                support = "disjoint"
            else:
                low, high = assumption.resolve(intersection)
                support = f"k={low}" if low == high else f"k in [{low},{high}]"
            bound = restriction_bound(divisor, member.curve, low, high)
            row = ConstraintRow(
                curve=member.curve,
                relation=Relation.le,
                bound=Fraction(bound),
                provenance=f"{member.name} {support}",
                family=family.tag,
            )
            (annotations if assumption.annotation else rows).append(row)
    LOGGER.debug(
        f"restriction table of {divisor} under {scenario}: "
        f"{len(rows)} rows, {len(annotations)} annotations"
    )
    return RestrictionTable(divisor, scenario, tuple(rows), tuple(annotations))
