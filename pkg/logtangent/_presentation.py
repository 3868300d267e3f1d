"""
Presentations of sheaves on the plane by matrices of forms.
"""
import dataclasses
import enum
import logging
from fractions import Fraction
from typing import Optional
from typing import Sequence

from ._errors import ParseError
from ._errors import PreconditionError
from ._errors import VerificationError
from ._forms import Form
from ._forms import PointP2
from ._forms import parse_form
from ._linalg import as_matrix
from ._linalg import rank
from ._p1split import GradedMatrixP1
from ._p1split import LineP2
from ._p1split import SplittingType
from ._p1split import coker_profile
from ._p1split import cokernel_splitting
from ._p1split import kernel_splitting
from ._p1split import restrict_matrix
from ._syzygy import check_grid_degrees
from ._syzygy import graded_map_matrix

LOGGER = logging.getLogger(__name__)


class PresentationRole(enum.Enum):
    """
    Whether the sheaf is the cokernel or the kernel of the presentation matrix.
    """

    cokernel = enum.auto()
    kernel = enum.auto()


@dataclasses.dataclass(frozen=True)
class ChernPair:
    c1: int
    c2: int

    def twisted(self, amount: int, rank: int = 2) -> "ChernPair":
        """
        Chern classes of ``E(amount)`` for a sheaf ``E`` of the given rank.
        """
        return ChernPair(
            self.c1 + rank * amount,
            self.c2 + (rank - 1) * self.c1 * amount + rank * (rank - 1) // 2 * amount**2,
        )

    def euler_characteristic(self, rank: int) -> Fraction:
        """
        Riemann-Roch on the plane: ``r + 3/2 c1 + (c1^2 - 2 c2) / 2``.
        """
        return rank + Fraction(3, 2) * self.c1 + Fraction(self.c1**2 - 2 * self.c2, 2)

    def __str__(self) -> str:
        return f"({self.c1},{self.c2})"


def _series_product(factors: Sequence[Sequence[int]]) -> list[int]:
    result = [1, 0, 0]
    for factor in factors:
        factor = list(factor) + [0] * (3 - len(factor))
        result = [
            result[0] * factor[0],
            result[0] * factor[1] + result[1] * factor[0],
            result[0] * factor[2] + result[1] * factor[1] + result[2] * factor[0],
        ]
    return result


def chern_of_degrees(numerator: Sequence[int], denominator: Sequence[int]) -> ChernPair:
    """
    Chern classes of ``c(⊕ O(-n)) / c(⊕ O(-d))`` for generator degrees ``n``
    and ``d``, truncated to the plane.
    """
    top = _series_product([(1, -n) for n in numerator])
    bottom = _series_product([(1, d, d * d) for d in denominator])
    total = _series_product([top, bottom])
    return ChernPair(total[1], total[2])


@dataclasses.dataclass(frozen=True)
class GradedPresentation:
    """
    A sheaf ``E`` on the plane presented, up to a twist, as the cokernel or the
    kernel of a map ``⊕ O(-a_j) -> ⊕ O(-b_i)``.

    The matrix presents ``E(twist)``; the rank and Chern metadata describe
    ``E`` itself.
    """

    rows: tuple[tuple[Form, ...], ...]

    source_degrees: tuple[int, ...]

    target_degrees: tuple[int, ...]

    role: PresentationRole

    rank: int
    """
    Expected rank of the presented sheaf.
    """

    chern: ChernPair

    twist: int = 0

    label: str = ""
    """
    Free text naming how the presentation was built.
    """

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(row) for row in self.rows))
        object.__setattr__(self, "source_degrees", tuple(self.source_degrees))
        object.__setattr__(self, "target_degrees", tuple(self.target_degrees))
        try:
            check_grid_degrees(self.rows, self.source_degrees, self.target_degrees)
        except ValueError as error:
            raise PreconditionError(f"invalid presentation: {error}") from error

    @property
    def nrows(self) -> int:
        return len(self.target_degrees)

    @property
    def ncols(self) -> int:
        return len(self.source_degrees)

    def row_degree_bound(self) -> int:
        total = 0
        for row in self.rows:
            degrees = [entry.degree for entry in row if not entry.is_zero]
            total += max(degrees) if degrees else 0
        return total

    # -- twists --

    def twisted(self, amount: int) -> "GradedPresentation":
        """
        Presentation of ``E(amount)``.
        """
        return dataclasses.replace(
            self,
            source_degrees=tuple(a - amount for a in self.source_degrees),
            target_degrees=tuple(b - amount for b in self.target_degrees),
            chern=self.chern.twisted(amount, self.rank),
        )

    def normalized(self) -> "GradedPresentation":
        """
        Twist of a rank-2 sheaf with first Chern class in ``{-1, 0}``.
        """
        if self.rank != 2:
            raise PreconditionError(f"normalization needs rank 2, got rank {self.rank}")
        return self.twisted((-self.chern.c1) // 2)

    # -- ranks and evaluation --

    def evaluate(self, point: PointP2):
        return as_matrix(
            [[entry.evaluate(point.coordinates) for entry in row] for row in self.rows],
            cols=self.ncols,
        )

    def rank_at(self, point: PointP2) -> int:
        matrix = self.evaluate(point)
        return rank(matrix) if matrix.size else 0

    def generic_rank(self) -> int:
        """
        Rank over the function field of the plane.

        A nonzero minor is divisible by at most as many lines as its degree,
        so restricting to one more line than that degree always finds it.
        """
        limit = min(self.nrows, self.ncols)
        best = 0
        for k in range(self.row_degree_bound() + 1):
            if best == limit:
                break
            line = LineP2((1, k + 1, (k + 1) ** 2 + 1))
            best = max(best, self.restrict(line).generic_rank())
        return best

    def presented_rank(self) -> int:
        generic = self.generic_rank()
        if self.role is PresentationRole.cokernel:
            return self.nrows - generic
        return self.ncols - generic

    def is_locally_free_at(self, point: PointP2) -> bool:
        """
        For a cokernel: the fiber at the point has the generic dimension.
        """
        if self.role is PresentationRole.cokernel:
            return self.rank_at(point) == self.generic_rank()
        return self.rank_at(point) == self.nrows

    # -- restriction to lines --

    def restrict(self, line: LineP2) -> GradedMatrixP1:
        return restrict_matrix(self.rows, self.source_degrees, self.target_degrees, line)

    def restricted_splitting(
        self,
        line: LineP2,
        t_range: Optional[tuple[int, int]] = None,
        profile: bool = False,
    ) -> SplittingType:
        """
        Splitting type of ``E`` restricted to a line.

        For a kernel presentation the restriction of the kernel is the kernel
        of the restricted map wherever the map is surjective along the line.
        A cokernel is split through the kernel of the transposed restriction,
        or by fitting its Hilbert profile when ``profile`` is set or a window
        is given.
        """
        restricted = self.restrict(line)
        if self.role is PresentationRole.kernel:
            presented = kernel_splitting(restricted)
        elif profile or t_range is not None:
            presented = coker_profile(restricted, t_range)
        else:
            presented = cokernel_splitting(restricted)
        return presented.shifted(-self.twist)

    # -- Hilbert functions and Chern classes --

    def hilbert_function(self, t: int) -> int:
        """
        Dimension in degree ``t`` of the module presented by the matrix.
        """
        piece = graded_map_matrix(
            self.rows, self.source_degrees, self.target_degrees, t, nvars=3
        )
        piece_rank = rank(piece) if piece.size else 0
        if self.role is PresentationRole.cokernel:
            return piece.shape[0] - piece_rank
        return piece.shape[1] - piece_rank

    def euler_characteristic(self, t: int) -> Fraction:
        """
        ``χ(E(twist + t))``, the value the Hilbert function takes in high degree.
        """
        return self.chern.twisted(self.twist + t, self.rank).euler_characteristic(
            self.rank
        )

    def check_euler(self, start: Optional[int] = None, count: int = 4) -> list[int]:
        """
        Compare the Hilbert function with the Euler characteristic on
        ``count`` consecutive degrees.

        Raises:
            VerificationError: on the first mismatch.
        """
        if start is None:
            start = max(self.source_degrees + self.target_degrees + (0,)) + 1
            if self.role is PresentationRole.kernel:
                start += 2 * self.row_degree_bound()
        values = []
        for t in range(start, start + count):
            observed = self.hilbert_function(t)
            expected = self.euler_characteristic(t)
            if observed != expected:
                raise VerificationError(
                    f"Hilbert function {observed} in degree {t} differs from "
                    f"the Euler characteristic {expected} of {self.chern}"
                )
            values.append(observed)
        return values

    def chern_from_degrees(self) -> ChernPair:
        """
        Chern classes of ``E`` read from the twists, valid when the map is
        injective (cokernel) or surjective as a map of sheaves (kernel).
        """
        if self.role is PresentationRole.cokernel:
            presented = chern_of_degrees(self.target_degrees, self.source_degrees)
        else:
            presented = chern_of_degrees(self.source_degrees, self.target_degrees)
        return presented.twisted(-self.twist, self.rank)

    def check_chern(self):
        """
        Raises:
            VerificationError: if the metadata disagrees with the twists.
        """
        computed = self.chern_from_degrees()
        if computed != self.chern:
            raise VerificationError(
                f"presentation twists give Chern classes {computed}, metadata says {self.chern}"
            )

    # -- serialization --

    def header(self) -> str:
        source = ",".join(str(a) for a in self.source_degrees)
        target = ",".join(str(b) for b in self.target_degrees)
        return (
            f"presentation role={self.role.name} rank={self.rank} "
            f"c1={self.chern.c1} c2={self.chern.c2} twist={self.twist} "
            f"source={source} target={target}"
        )

    def to_text(self, comments: Sequence[str] = ()) -> str:
        """
        Header line, one line of comma separated forms per row, then the
        comments prefixed by ``#``.
        """
        lines = [self.header()]
        for row in self.rows:
            lines.append(", ".join(str(entry) for entry in row))
        for comment in comments:
            lines.append(f"# {comment}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "role": self.role.name,
            "rank": self.rank,
            "c1": self.chern.c1,
            "c2": self.chern.c2,
            "twist": self.twist,
            "source": list(self.source_degrees),
            "target": list(self.target_degrees),
            "rows": [[str(entry) for entry in row] for row in self.rows],
        }


def _parse_degrees(text: str) -> tuple[int, ...]:
    if not text:
        return tuple()
    try:
        return tuple(int(value) for value in text.split(","))
    except ValueError as error:
        raise ParseError(f"malformed degree list '{text}'") from error


def parse_presentation(text: str) -> tuple[GradedPresentation, list[str]]:
    """
    Read the format written by :meth:`GradedPresentation.to_text`.

    Returns:
        the presentation and the list of comment lines (without ``#``).
    """
    lines = [line.rstrip() for line in text.splitlines() if line.strip()]
    comments = [line.lstrip("#").strip() for line in lines if line.lstrip().startswith("#")]
    content = [line for line in lines if not line.lstrip().startswith("#")]
    if not content or not content[0].startswith("presentation"):
        raise ParseError("missing 'presentation' header line")

    fields = {}
    for token in content[0].split()[1:]:
        key, _, value = token.partition("=")
        fields[key] = value
    try:
        role = PresentationRole[fields["role"]]
        rank_ = int(fields["rank"])
        chern = ChernPair(int(fields["c1"]), int(fields["c2"]))
        twist = int(fields.get("twist", "0"))
        source = _parse_degrees(fields.get("source", ""))
        target = _parse_degrees(fields.get("target", ""))
    except (KeyError, ValueError) as error:
        raise ParseError(f"malformed presentation header: {error}") from error

    body = content[1:]
    if len(body) != len(target):
        raise ParseError(f"expected {len(target)} rows, found {len(body)}")
    rows = []
    for i, line in enumerate(body):
        cells = [cell.strip() for cell in line.split(",")]
        if len(cells) != len(source):
            raise ParseError(f"row {i} has {len(cells)} entries, expected {len(source)}")
        rows.append(
            [
                parse_form(cell, degree=source[j] - target[i])
                if source[j] - target[i] >= 0
                else _parse_zero(cell, source[j] - target[i])
                for j, cell in enumerate(cells)
            ]
        )
    presentation = GradedPresentation(
        rows=rows,
        source_degrees=source,
        target_degrees=target,
        role=role,
        rank=rank_,
        chern=chern,
        twist=twist,
    )
    return presentation, comments


def _parse_zero(cell: str, degree: int) -> Form:
    if cell != "0":
        raise ParseError(f"entry '{cell}' must be 0 in negative degree {degree}")
    return Form.zero(degree)
