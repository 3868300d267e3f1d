"""
Plane curves, marked points on them and the logarithmic tangent sheaf of a
smooth curve.
"""
import dataclasses
import logging
from typing import Optional

from ._errors import ParseError
from ._errors import PreconditionError
from ._forms import Form
from ._forms import PointP2
from ._forms import gradient
from ._forms import parse_form
from ._forms import parse_point
from ._forms import space_dimension
from ._linalg import rank
from ._presentation import ChernPair
from ._presentation import GradedPresentation
from ._presentation import PresentationRole
from ._syzygy import SyzygyBasis
from ._syzygy import graded_map_matrix
from ._syzygy import syzygies_up_to

LOGGER = logging.getLogger(__name__)


def is_smooth(form: Form) -> bool:
    """
    Exact smoothness test for a plane curve.

    The partials of a degree-``d`` form have no common zero exactly when they
    form a regular sequence, and then their ideal contains every form of
    degree ``3d - 5``; otherwise it contains no full graded piece.
    """
    if form.is_zero:
        return False
    degree = form.degree
    if degree == 0:
        return False
    if degree == 1:
        return True
    partials = list(gradient(form))
    target_degree = 3 * degree - 5
    piece = graded_map_matrix([partials], [degree - 1] * 3, [0], target_degree)
    return rank(piece) == space_dimension(3, target_degree)


@dataclasses.dataclass(frozen=True)
class PlaneCurve:
    form: Form

    smooth: bool
    """
    True if the curve is known to be smooth.
    """

    conditional: bool = False
    """
    True when smoothness was assumed rather than verified.
    """

    @classmethod
    def from_form(cls, form: Form) -> "PlaneCurve":
        if form.nvars != 3:
            raise PreconditionError(f"a plane curve needs a form in 3 variables, got {form.nvars}")
        if form.is_zero or form.degree < 1:
            raise PreconditionError(f"'{form}' does not define a curve")
        return cls(form=form, smooth=is_smooth(form))

    @classmethod
    def assume_smooth(cls, form: Form) -> "PlaneCurve":
        LOGGER.warning(f"smoothness of {form} assumed, results are conditional on it")
        return cls(form=form, smooth=True, conditional=True)

    @property
    def degree(self) -> int:
        return self.form.degree

    def require_smooth(self):
        if not self.smooth:
            raise PreconditionError(f"the curve {self.form} is not smooth")

    def contains(self, point: PointP2) -> bool:
        return self.form.evaluate(point.coordinates) == 0

    def is_smooth_at(self, point: PointP2) -> bool:
        return any(partial.evaluate(point.coordinates) != 0 for partial in gradient(self.form))


def parse_curve(text: str, assume_smooth: bool = False) -> PlaneCurve:
    form = parse_form(text)
    if assume_smooth:
        return PlaneCurve.assume_smooth(form)
    return PlaneCurve.from_form(form)


@dataclasses.dataclass(frozen=True)
class PointedCurve:
    """
    A curve with distinct marked points on its smooth locus.
    """

    curve: PlaneCurve

    points: tuple[PointP2, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if len(set(self.points)) != len(self.points):
            raise PreconditionError(f"marked points are not distinct: {self.points}")
        for point in self.points:
            if not self.curve.contains(point):
                raise PreconditionError(f"marked point {point} is not on {self.curve.form}")
            if not self.curve.is_smooth_at(point):
                raise PreconditionError(f"marked point {point} is singular on {self.curve.form}")


def parse_pointed_curve(text: str, assume_smooth: bool = False) -> PointedCurve:
    """
    First non-empty line the form, each following line a point ``[a:b:c]``.
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    lines = [line for line in lines if not line.startswith("#")]
    if not lines:
        raise ParseError("empty pointed-curve input")
    curve = parse_curve(lines[0], assume_smooth=assume_smooth)
    points = tuple(parse_point(line) for line in lines[1:])
    return PointedCurve(curve, points)


def chern_generalized(degree: int, marked: int) -> ChernPair:
    """
    Chern classes of the generalized logarithmic cotangent sheaf of a smooth
    curve of the given degree with ``marked`` points.
    """
    if degree < 1 or marked < 0:
        raise PreconditionError(f"invalid degree {degree} or point count {marked}")
    return ChernPair(degree - 3, degree**2 - 3 * degree + 3 + marked)


def logtangent_presentation(
    curve: PlaneCurve, dmax: Optional[int] = None
) -> tuple[GradedPresentation, SyzygyBasis]:
    """
    The logarithmic tangent sheaf ``T(-log D)`` of a smooth curve, twisted by
    -1, as the kernel of the gradient row ``O^3 -> O(d-1)``.

    Returns:
        the kernel presentation (Chern classes ``(3-d, d^2-3d+3)`` of
        ``T(-log D)``, twist -1) and the minimal syzygies of the gradient.

    Raises:
        PreconditionError: if the curve is not smooth.
    """
    curve.require_smooth()
    degree = curve.degree
    partials = list(gradient(curve.form))
    presentation = GradedPresentation(
        rows=[partials],
        source_degrees=(0, 0, 0),
        target_degrees=(1 - degree,),
        role=PresentationRole.kernel,
        rank=2,
        chern=ChernPair(3 - degree, degree**2 - 3 * degree + 3),
        twist=-1,
        label=f"T(-log D)(-1) for D = {curve.form}",
    )
    presentation.check_chern()
    if dmax is None:
        dmax = max(degree + 2, 2 * degree - 2)
    basis = syzygies_up_to(partials, dmax)
    LOGGER.info(f"log tangent presentation of {curve.form}: syzygy degrees {basis.degrees}")
    return presentation, basis


@dataclasses.dataclass(frozen=True)
class KeyRestriction:
    """
    Degrees of the sub line bundle and of the quotient in the restriction of a
    logarithmic tangent sheaf to a rational curve.
    """

    sub: int

    quotient: int

    forced: bool
    """
    True if the extension splits, so the restriction is ``O(sub) ⊕ O(quotient)``.
    """

    @property
    def pair(self) -> tuple[int, int]:
        return self.sub, self.quotient

    def to_dict(self) -> dict:
        return {"sub": self.sub, "quotient": self.quotient, "forced": self.forced}


def key_restriction_degrees(c1_restricted: int, support_count: int) -> KeyRestriction:
    """
    Args:
        c1_restricted: degree of the logarithmic tangent sheaf on the curve.
        support_count: number of reduced points in which the curve meets the
            divisor.

    Raises:
        PreconditionError: for an empty support.
    """
    if support_count < 1:
        raise PreconditionError(
            "the curve must meet the divisor: the restriction lemma fails for an empty support"
        )
    sub = 2 - support_count
    quotient = c1_restricted - sub
    return KeyRestriction(sub=sub, quotient=quotient, forced=sub - quotient >= -1)
