"""
Splitting types of sheaves restricted to lines of the plane.

Every coherent sheaf on the projective line is a sum of line bundles plus a
torsion part; the functions here recover that decomposition exactly from
matrices of binary forms.
"""
import dataclasses
import logging
from fractions import Fraction
from typing import Optional
from typing import Sequence

from ._errors import ParseError
from ._errors import PreconditionError
from ._errors import VerificationError
from ._forms import BinaryForm
from ._forms import Form
from ._forms import PointP2
from ._forms import parse_point
from ._linalg import as_matrix
from ._linalg import rank
from ._syzygy import check_grid_degrees
from ._syzygy import graded_map_matrix
from ._syzygy import module_kernel

LOGGER = logging.getLogger(__name__)


def _cross(u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


@dataclasses.dataclass(frozen=True)
class LineP2:
    """
    Line of the plane given by its dual coordinates ``(α0, α1, α2)``, i.e. the
    zero set of ``α0*x0 + α1*x1 + α2*x2``.

    Dual coordinates are normalized like points: primitive, first nonzero
    entry positive.
    """

    coordinates: tuple[int, int, int]

    def __post_init__(self):
        normalized = PointP2(tuple(self.coordinates)).coordinates
        object.__setattr__(self, "coordinates", normalized)

    @classmethod
    def of(cls, *values) -> "LineP2":
        """
        Line from rational dual coordinates.
        """
        return cls(PointP2.of(*values).coordinates)

    @classmethod
    def from_form(cls, form: Form) -> "LineP2":
        if form.degree != 1 or form.nvars != 3 or form.is_zero:
            raise PreconditionError(f"{form} is not a nonzero linear form")
        return cls.of(*form.coefficient_vector())

    @classmethod
    def through(cls, p: PointP2, q: PointP2) -> "LineP2":
        """
        The line joining two distinct points.
        """
        if p == q:
            raise PreconditionError(f"cannot join the point {p} with itself")
        return cls(_cross(p.coordinates, q.coordinates))

    @property
    def form(self) -> Form:
        return Form.linear(self.coordinates)

    @property
    def dual_point(self) -> PointP2:
        return PointP2(self.coordinates)

    def contains(self, point: PointP2) -> bool:
        return sum(a * x for a, x in zip(self.coordinates, point.coordinates)) == 0

    def meet(self, other: "LineP2") -> PointP2:
        if other == self:
            raise PreconditionError(f"the line {self} does not meet itself in a point")
        return PointP2(_cross(self.coordinates, other.coordinates))

    @property
    def parametrization(self) -> tuple[PointP2, PointP2]:
        """
        Two points ``P``, ``Q`` spanning the line, so that ``[s:t] -> s*P + t*Q``
        parametrizes it.

        The chart is the first index ``i`` with ``α_i != 0``; with ``j < k``
        the two other indices, ``P`` has ``P_i = -α_j, P_j = α_i`` and ``Q`` has
        ``Q_i = -α_k, Q_k = α_i``.
        """
        alpha = self.coordinates
        i = next(index for index, value in enumerate(alpha) if value)
        j, k = [index for index in range(3) if index != i]
        p = [0, 0, 0]
        q = [0, 0, 0]
        p[i], p[j] = -alpha[j], alpha[i]
        q[i], q[k] = -alpha[k], alpha[i]
        return PointP2(tuple(p)), PointP2(tuple(q))

    def param_forms(self) -> tuple[BinaryForm, BinaryForm, BinaryForm]:
        """
        The three coordinates of the parametrization as linear binary forms.
        """
        p, q = self.parametrization
        return tuple(BinaryForm.linear([p[index], q[index]]) for index in range(3))

    def point(self, s, t) -> PointP2:
        p, q = self.parametrization
        return PointP2.of(*(Fraction(s) * a + Fraction(t) * b for a, b in zip(p, q)))

    def __str__(self) -> str:
        return "[" + ":".join(str(value) for value in self.coordinates) + "]"


def parse_line(text: str) -> LineP2:
    """
    Parse dual coordinates ``"[a0:a1:a2]"``.
    """
    try:
        return LineP2(parse_point(text).coordinates)
    except ParseError as error:
        raise ParseError(f"malformed line: {error}") from error


def restrict_form(form: Form, line: LineP2) -> BinaryForm:
    """
    Restriction of a plane form to a line, through the line's parametrization.

    The result vanishes identically iff the line's form divides ``form``.
    """
    return form.substitute(line.param_forms())


@dataclasses.dataclass(frozen=True)
class SplittingType:
    """
    Decomposition ``O(d_1) ⊕ ... ⊕ O(d_r) ⊕ T`` of a sheaf on the projective
    line, ``T`` being torsion of length ``torsion_length``.
    """

    degrees: tuple[int, ...]
    """
    Twists of the line-bundle summands, sorted in nondecreasing order.
    """

    torsion_length: int = 0

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(sorted(int(d) for d in self.degrees)))
        if self.torsion_length < 0:
            raise ValueError(f"negative torsion length {self.torsion_length}")

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        """
        First Chern number of the sheaf: sum of twists plus torsion length.
        """
        return sum(self.degrees) + self.torsion_length

    def shifted(self, amount: int) -> "SplittingType":
        return SplittingType(
            tuple(d + amount for d in self.degrees), self.torsion_length
        )

    def negated(self) -> "SplittingType":
        return SplittingType(tuple(-d for d in self.degrees), self.torsion_length)

    def h1(self, twist: int = 0) -> int:
        """
        Dimension of the first cohomology of the twisted sheaf.
        """
        return sum(max(0, -(d + twist) - 1) for d in self.degrees)

    def h0(self, twist: int = 0) -> int:
        return sum(max(0, d + twist + 1) for d in self.degrees) + self.torsion_length

    def __str__(self) -> str:
        return "(" + ",".join(str(d) for d in self.degrees) + f";torsion={self.torsion_length})"

    def to_dict(self) -> dict:
        return {"degrees": list(self.degrees), "torsion": self.torsion_length}


@dataclasses.dataclass(frozen=True)
class GradedMatrixP1:
    """
    Map ``⊕ O(-a_j) -> ⊕ O(-b_i)`` on the projective line given by binary
    forms; entry ``(i, j)`` has degree ``a_j - b_i``.
    """

    entries: tuple[tuple[BinaryForm, ...], ...]

    source_degrees: tuple[int, ...]
    """
    The column twists ``a_j``.
    """

    target_degrees: tuple[int, ...]
    """
    The row twists ``b_i``.
    """

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(row) for row in self.entries))
        object.__setattr__(self, "source_degrees", tuple(self.source_degrees))
        object.__setattr__(self, "target_degrees", tuple(self.target_degrees))
        try:
            check_grid_degrees(self.entries, self.source_degrees, self.target_degrees)
        except ValueError as error:
            raise PreconditionError(str(error)) from error

    @property
    def nrows(self) -> int:
        return len(self.target_degrees)

    @property
    def ncols(self) -> int:
        return len(self.source_degrees)

    def graded_piece(self, t: int):
        return graded_map_matrix(
            self.entries, self.source_degrees, self.target_degrees, t, nvars=2
        )

    def transpose(self) -> "GradedMatrixP1":
        """
        Dual map ``⊕ O(b_i) -> ⊕ O(a_j)``.
        """
        entries = tuple(
            tuple(self.entries[i][j] for i in range(self.nrows))
            for j in range(self.ncols)
        )
        return GradedMatrixP1(
            entries,
            source_degrees=tuple(-b for b in self.target_degrees),
            target_degrees=tuple(-a for a in self.source_degrees),
        )

    def row_degree_bound(self) -> int:
        total = 0
        for row in self.entries:
            degrees = [entry.degree for entry in row if not entry.is_zero]
            total += max(degrees) if degrees else 0
        return total

    def evaluate(self, s, t):
        return as_matrix(
            [[entry.evaluate((s, t)) for entry in row] for row in self.entries],
            cols=self.ncols,
        )

    def generic_rank(self) -> int:
        """
        Rank of the matrix over the function field, found by evaluating at
        more points than the degree of any minor.
        """
        if not self.nrows or not self.ncols:
            return 0
        best = rank(self.evaluate(0, 1))
        limit = min(self.nrows, self.ncols)
        for k in range(self.row_degree_bound() + 1):
            if best == limit:
                break
            best = max(best, rank(self.evaluate(1, k)))
        return best


def restrict_matrix(
    rows: Sequence[Sequence[Form]],
    source_degrees: Sequence[int],
    target_degrees: Sequence[int],
    line: LineP2,
) -> GradedMatrixP1:
    forms = line.param_forms()
    entries = tuple(
        tuple(
            entry.substitute(forms)
            if not entry.is_zero
            else BinaryForm.zero(entry.degree)
            for entry in row
        )
        for row in rows
    )
    return GradedMatrixP1(entries, tuple(source_degrees), tuple(target_degrees))


def kernel_splitting(matrix: GradedMatrixP1) -> SplittingType:
    """
    Splitting type of the kernel of a map of line-bundle sums on the
    projective line.

    The kernel module is free; a generator of degree ``d`` contributes a
    summand ``O(-d)``. Generators are found degree by degree until their
    number equals the kernel rank.

    Raises:
        VerificationError: if the degree bound is reached before the full
            kernel rank is generated.
    """
    kernel_rank = matrix.ncols - matrix.generic_rank()
    if kernel_rank == 0:
        return SplittingType(())
    image_rank = matrix.ncols - kernel_rank
    sources = matrix.source_degrees
    smallest_targets = sorted(matrix.target_degrees)[:image_rank]
    bound = sum(sources) - sum(smallest_targets) - (kernel_rank - 1) * min(sources)
    basis = module_kernel(
        matrix.entries,
        sources,
        matrix.target_degrees,
        dmax=bound + 1,
        nvars=2,
        stop_count=kernel_rank,
    )
    if len(basis) != kernel_rank:
        raise VerificationError(
            f"found {len(basis)} kernel generators up to degree {bound + 1}, "
            f"expected {kernel_rank}"
        )
    return SplittingType(tuple(-degree for degree in basis.degrees))


def cokernel_splitting(matrix: GradedMatrixP1) -> SplittingType:
    """
    Splitting type of the cokernel of an injective map, read from the kernel
    of the transposed map.

    The kernel of the transpose is the dual of the cokernel modulo torsion;
    the torsion length is what remains of the first Chern number
    ``sum(a_j) - sum(b_i)``.

    Raises:
        PreconditionError: if the map is not injective as a map of sheaves.
    """
    generic = matrix.generic_rank()
    if generic != matrix.ncols:
        raise PreconditionError(
            f"cokernel splitting needs an injective map, generic rank {generic} "
            f"< {matrix.ncols} columns"
        )
    dual = kernel_splitting(matrix.transpose())
    degrees = tuple(-d for d in dual.degrees)
    torsion = sum(matrix.source_degrees) - sum(matrix.target_degrees) - sum(degrees)
    if torsion < 0:
        raise VerificationError(
            f"dual splitting {degrees} exceeds the first Chern number of the cokernel"
        )
    return SplittingType(degrees, torsion)


def _h0_cokernel(matrix: GradedMatrixP1, transpose: GradedMatrixP1, t: int) -> int:
    piece = matrix.graded_piece(t)
    direct = piece.shape[0] - (rank(piece) if piece.size else 0)
    dual = transpose.graded_piece(-t - 2)
    serre = dual.shape[0] - (rank(dual) if dual.size else 0)
    return direct + serre


def _fit_profile(values: dict[int, int], low: int, high: int, expected_rank: int):
    steps = {t: values[t] - values[t - 1] for t in range(low + 1, high + 1)}
    if steps[low + 1] != 0 or steps[high] != expected_rank:
        return None
    ordered = [steps[t] for t in range(low + 1, high + 1)]
    if any(b < a for a, b in zip(ordered, ordered[1:])):
        raise VerificationError(
            f"cokernel profile is not monotone: {values}; the input is not a sheaf map"
        )
    degrees = []
    for t in range(low + 2, high + 1):
        degrees.extend([-t] * (steps[t] - steps[t - 1]))
    return SplittingType(tuple(degrees), values[low])


def coker_profile(
    matrix: GradedMatrixP1, t_range: Optional[tuple[int, int]] = None
) -> SplittingType:
    """
    Splitting type of the cokernel of an injective map of line-bundle sums on
    the projective line.

    ``h0`` of the twisted cokernel is the cokernel dimension of the graded
    piece plus, by Serre duality, the cokernel dimension of the transposed
    piece in degree ``-t-2``. Its first differences count the summands of
    degree at least ``-t``; the flat part below the window is the torsion.

    Args:
        matrix: the map; it must have full column rank generically.
        t_range: explicit fitting window; by default a window around the
            largest twist, widened once if the fit fails.

    Raises:
        PreconditionError: if the map is not injective as a map of sheaves.
        VerificationError: if no exact fit exists in the window or the fit is
            contradicted in the five degrees after it.
    """
    generic = matrix.generic_rank()
    if generic != matrix.ncols:
        raise PreconditionError(
            f"cokernel profile needs an injective map, generic rank {generic} "
            f"< {matrix.ncols} columns"
        )
    expected_rank = matrix.nrows - matrix.ncols
    transpose = matrix.transpose()

    if t_range is None:
        twists = [abs(d) for d in matrix.source_degrees + matrix.target_degrees] or [0]
        half = max(twists) + expected_rank + 2
        windows = [(-half, half), (-2 * half, 2 * half)]
    else:
        windows = [tuple(t_range)]

    values: dict[int, int] = {}
    fit = None
    for index, (low, high) in enumerate(windows):
        for t in range(low, high + 1):
            if t not in values:
                values[t] = _h0_cokernel(matrix, transpose, t)
        fit = _fit_profile(values, low, high, expected_rank)
        if fit is not None:
            break
        if index + 1 < len(windows):
            LOGGER.warning(
                f"cokernel profile did not stabilize on [{low},{high}], "
                f"widening to {list(windows[index + 1])}"
            )
    if fit is None:
        raise VerificationError(
            f"no exact splitting fit for the cokernel profile on {list(windows[-1])}"
        )

    for t in range(high + 1, high + 6):
        observed = _h0_cokernel(matrix, transpose, t)
        if observed != fit.h0(t):
            raise VerificationError(
                f"cokernel profile h0({t})={observed} contradicts the fit {fit}"
            )
    LOGGER.debug(f"cokernel profile on [{low},{high}] gives {fit}")
    return fit
