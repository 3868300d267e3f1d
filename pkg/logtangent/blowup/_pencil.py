"""
Six points of the plane in general position and the curves of ``|L|`` on the
cubic surface they define.
"""
import dataclasses
import enum
import itertools
import logging
from typing import Sequence

from .._errors import PreconditionError
from .._forms import PointP2
from .._linalg import as_matrix
from .._linalg import determinant
from .._p1split import LineP2
from ._picard import POINT_COUNT
from ._picard import PicClass
from ._picard import exceptional
from ._picard import line_through

LOGGER = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class GeneralPosition:
    """
    Outcome of the general-position test; ``witness`` names the first
    violated condition and the 1-based indices involved.
    """

    general: bool

    witness: str = ""

    indices: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.general

    def to_dict(self) -> dict:
        return {"general": self.general, "witness": self.witness, "indices": list(self.indices)}


def _veronese_row(point: PointP2) -> list[int]:
    x, y, z = point.coordinates
    return [x * x, y * y, z * z, x * y, x * z, y * z]


def general_position(points: Sequence[PointP2]) -> GeneralPosition:
    """
    Six distinct points, no three on a line and not all six on a conic.

    Raises:
        PreconditionError: if there are not exactly six points.
    """
    if len(points) != POINT_COUNT:
        raise PreconditionError(f"expected {POINT_COUNT} points, got {len(points)}")
    for i, j in itertools.combinations(range(POINT_COUNT), 2):
        if points[i] == points[j]:
            return GeneralPosition(False, f"p{i + 1} = p{j + 1}", (i + 1, j + 1))
    for triple in itertools.combinations(range(POINT_COUNT), 3):
        matrix = as_matrix([points[index].coordinates for index in triple])
        if determinant(matrix) == 0:
            indices = tuple(index + 1 for index in triple)
            return GeneralPosition(
                False, f"p{indices[0]}, p{indices[1]}, p{indices[2]} are collinear", indices
            )
    if determinant(as_matrix([_veronese_row(point) for point in points])) == 0:
        return GeneralPosition(
            False, "the six points lie on a conic", tuple(range(1, POINT_COUNT + 1))
        )
    return GeneralPosition(True)


class MemberKind(enum.Enum):
    twisted_cubic = "TwistedCubic"
    conic_plus_line = "ConicPlusLine"
    three_lines = "ThreeLines"


@dataclasses.dataclass(frozen=True)
class PencilMember:
    """
    The curve of the cubic surface over a line of the plane and its
    components.
    """

    kind: MemberKind

    indices: tuple[int, ...]
    """
    1-based indices of the blown-up points on the line.
    """

    components: tuple[PicClass, ...]

    def __str__(self) -> str:
        if not self.indices:
            return self.kind.value
        return f"{self.kind.value}({','.join(str(index) for index in self.indices)})"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "indices": list(self.indices),
            "components": [component.to_compact() for component in self.components],
        }


def classify_pencil_member(line: LineP2, points: Sequence[PointP2]) -> PencilMember:
    """
    Total transform on the cubic surface of a plane line: a twisted cubic when
    the line misses the points, a conic and the exceptional line over the one
    point it passes through, or the line through two points with both
    exceptional lines.

    Raises:
        PreconditionError: if the points are not in general position.
    """
    position = general_position(points)
    if not position:
        raise PreconditionError(f"points not in general position: {position.witness}")
    on_line = tuple(index + 1 for index, point in enumerate(points) if line.contains(point))
    if len(on_line) > 2:
        raise PreconditionError(f"the line {line} passes through {len(on_line)} of the points")
    if not on_line:
        return PencilMember(MemberKind.twisted_cubic, (), (PicClass(1),))
    if len(on_line) == 1:
        (index,) = on_line
        return PencilMember(
            MemberKind.conic_plus_line, on_line, (line_through(on_line), exceptional(index))
        )
    i, j = on_line
    return PencilMember(
        MemberKind.three_lines, on_line, (line_through(on_line), exceptional(i), exceptional(j))
    )
