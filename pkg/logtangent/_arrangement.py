"""
Line arrangements: incidence structure, Chern classes of the logarithmic
tangent sheaf and the numerical freeness criteria.
"""
import dataclasses
import functools
import logging
import math
from typing import Optional
from typing import Sequence

from ._errors import ParseError
from ._errors import PreconditionError
from ._errors import VerificationError
from ._forms import Form
from ._forms import PointP2
from ._forms import gradient
from ._forms import parse_form
from ._p1split import LineP2
from ._p1split import SplittingType
from ._p1split import parse_line
from ._presentation import ChernPair
from ._presentation import GradedPresentation
from ._presentation import PresentationRole

LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class Arrangement:
    """
    Finite set of distinct lines with its multiple points.
    """

    lines: tuple[LineP2, ...]

    multiple_points: tuple[tuple[PointP2, int], ...] = dataclasses.field(
        default=(), compare=False
    )
    """
    Each intersection point with the number of lines through it, filled on
    construction.
    """

    def __post_init__(self):
        lines = tuple(self.lines)
        object.__setattr__(self, "lines", lines)
        if len(set(lines)) != len(lines):
            raise PreconditionError(f"repeated line in the arrangement {[str(l) for l in lines]}")

        incidences: dict[PointP2, set[int]] = {}
        for i in range(len(lines)):
            for j in range(i + 1, len(lines)):
                point = lines[i].meet(lines[j])
                incidences.setdefault(point, set()).update((i, j))
        points = tuple(
            sorted(
                ((point, len(indices)) for point, indices in incidences.items()),
                key=lambda item: item[0].coordinates,
            )
        )
        object.__setattr__(self, "multiple_points", points)
        pairs = sum(math.comb(s, 2) for _, s in points)
        if pairs != math.comb(len(lines), 2):
            raise VerificationError(
                f"incidence count {pairs} differs from {math.comb(len(lines), 2)} line pairs"
            )

    @classmethod
    def from_forms(cls, forms: Sequence[Form]) -> "Arrangement":
        return cls(tuple(LineP2.from_form(form) for form in forms))

    @property
    def size(self) -> int:
        return len(self.lines)

    @functools.cached_property
    def product(self) -> Form:
        result = Form.constant(1)
        for line in self.lines:
            result = result * line.form
        return result

    def lines_through(self, point: PointP2) -> int:
        return sum(1 for line in self.lines if line.contains(point))

    def to_dict(self) -> dict:
        return {
            "lines": [str(line) for line in self.lines],
            "multiple_points": [
                {"point": str(point), "lines": count} for point, count in self.multiple_points
            ],
        }


def parse_arrangement(text: str) -> Arrangement:
    """
    Lines separated by ``;`` or newlines, each a linear form or dual
    coordinates ``[a0:a1:a2]``.
    """
    chunks = [
        chunk.strip()
        for line in text.splitlines()
        for chunk in line.split(";")
        if chunk.strip() and not chunk.strip().startswith("#")
    ]
    if not chunks:
        raise ParseError("empty arrangement")
    lines = []
    for chunk in chunks:
        if chunk.startswith("["):
            lines.append(parse_line(chunk))
        else:
            form = parse_form(chunk, degree=1)
            if form.is_zero:
                raise ParseError("the zero form is not a line")
            lines.append(LineP2.from_form(form))
    return Arrangement(tuple(lines))


def arrangement_chern(arrangement: Arrangement) -> ChernPair:
    """
    Chern classes of the logarithmic tangent sheaf:
    ``c1 = 3 - m`` and ``c2 = sum(s(x) - 1) + 3 - 2m``.
    """
    m = arrangement.size
    c2 = sum(s - 1 for _, s in arrangement.multiple_points) + 3 - 2 * m
    return ChernPair(3 - m, c2)


def arrangement_multiplicity(arrangement: Arrangement) -> int:
    """
    Largest number of lines through one point.
    """
    if arrangement.size < 2:
        return arrangement.size
    return max(s for _, s in arrangement.multiple_points)


@dataclasses.dataclass(frozen=True)
class FreenessVerdict:
    free: bool

    pair: Optional[tuple[int, int]] = None
    """
    Twists of the two line bundles, in the order of the criterion that fired.
    """

    criterion: str = ""

    @property
    def splitting(self) -> Optional[SplittingType]:
        if self.pair is None:
            return None
        return SplittingType(self.pair)

    def __str__(self) -> str:
        if not self.free:
            return "Unknown"
        return f"Free({self.pair[0]},{self.pair[1]})"

    def to_dict(self) -> dict:
        return {
            "verdict": "free" if self.free else "unknown",
            "pair": list(self.pair) if self.pair else None,
            "criterion": self.criterion,
        }


def freeness_certificate(arrangement: Arrangement) -> FreenessVerdict:
    """
    Apply the two sufficient numerical criteria for freeness.

    With ``m`` lines and maximal multiplicity ``m(D)``:

    - ``2 m(D) >= m + 1`` and ``c2(T(-log D)(m-1-m(D))) == 0`` gives
      ``O(1-m+m(D)) ⊕ O(2-m(D))``;
    - ``2 m(D) == m`` and ``c2(T(-log D)(m(D)-2)) == 0`` gives
      ``O(2-m(D)) ⊕ O(1-m(D))``.

    Anything else is reported as unknown.
    """
    m = arrangement.size
    md = arrangement_multiplicity(arrangement)
    chern = arrangement_chern(arrangement)
    if 2 * md >= m + 1 and chern.twisted(m - 1 - md).c2 == 0:
        verdict = FreenessVerdict(True, (1 - m + md, 2 - md), "2m(D) >= m+1")
    elif 2 * md == m and chern.twisted(md - 2).c2 == 0:
        verdict = FreenessVerdict(True, (2 - md, 1 - md), "2m(D) = m")
    else:
        verdict = FreenessVerdict(False)
    LOGGER.info(f"arrangement of {m} lines, m(D)={md}, {chern}: {verdict}")
    return verdict


def arrangement_presentation(arrangement: Arrangement) -> GradedPresentation:
    """
    ``T(-log D)(-1)`` as the kernel of the gradient of the product of the
    lines.

    The gradient vanishes at the multiple points, so restrictions through the
    kernel presentation are only meaningful on lines avoiding them.
    """
    m = arrangement.size
    if m < 1:
        raise PreconditionError("an empty arrangement has no presentation")
    return GradedPresentation(
        rows=[list(gradient(arrangement.product))],
        source_degrees=(0, 0, 0),
        target_degrees=(1 - m,),
        role=PresentationRole.kernel,
        rank=2,
        chern=arrangement_chern(arrangement),
        twist=-1,
        label=f"T(-log D)(-1) for an arrangement of {m} lines",
    )
