"""
Smooth plane cubics: the dual cubic of jumping lines, the triangle test, the
pencils of lines meeting a cubic in a single point and the presentation of a
cubic with one marked point.
"""
import logging
from typing import Optional
from typing import Sequence

import numpy
import sympy

from ._curves import PlaneCurve
from ._curves import chern_generalized
from ._curves import logtangent_presentation
from ._errors import PreconditionError
from ._errors import VerificationError
from ._forms import Form
from ._forms import PointP2
from ._forms import gradient
from ._jumping import JumpingReport
from ._jumping import PencilLines
from ._jumping import build_jumping_report
from ._jumping import jumping_test
from ._jumping import pencil_axis
from ._jumping import pencil_lines_from_condition
from ._jumping import pencil_restriction
from ._jumping import restrict_along
from ._linalg import as_matrix
from ._linalg import span_contains
from ._p1split import LineP2
from ._presentation import GradedPresentation
from ._presentation import PresentationRole
from ._sampling import random_lines
from ._sampling import random_point

LOGGER = logging.getLogger(__name__)

CUBIC_MARKED_POINT = PointP2((1, 1, 0))


def _require_smooth_cubic(curve: PlaneCurve):
    if curve.degree != 3:
        raise PreconditionError(f"{curve.form} is not a cubic")
    curve.require_smooth()


def cubic_point_matrix(rng: Optional[numpy.random.Generator] = None) -> GradedPresentation:
    """
    The 4×2 matrix ``((y-x, z, 0, 0), (0, x+y, y², z²))ᵗ`` presenting the
    generalized log sheaf of a smooth cubic through ``[1:1:0]`` marked there.

    The matrix does not depend on the cubic of the family. Checked before
    returning: Chern classes ``(0, 4)``, rank drop exactly at ``[1:1:0]`` and
    jumping coordinate lines.
    """
    rng = rng if rng is not None else numpy.random.default_rng(0)
    x, y, z = (Form.variable(i) for i in range(3))
    zero1 = Form.zero(1)
    zero2 = Form.zero(2)
    presentation = GradedPresentation(
        rows=[
            [y - x, zero1],
            [z, x + y],
            [zero2, y**2],
            [zero2, z**2],
        ],
        source_degrees=(3, 3),
        target_degrees=(2, 2, 1, 1),
        role=PresentationRole.cokernel,
        rank=2,
        chern=chern_generalized(3, 1),
        label="cubic with the marked point [1:1:0]",
    )
    presentation.check_chern()
    if presentation.rank_at(CUBIC_MARKED_POINT) == presentation.ncols:
        raise VerificationError(f"the matrix has full rank at {CUBIC_MARKED_POINT}")
    point = random_point(rng)
    while point == CUBIC_MARKED_POINT:
        point = random_point(rng)
    if presentation.rank_at(point) != presentation.ncols:
        raise VerificationError(f"the matrix drops rank at {point}")
    for index in range(3):
        line = LineP2(tuple(1 if i == index else 0 for i in range(3)))
        if not jumping_test(presentation, 0, line).jumping:
            raise VerificationError(f"the coordinate line {line} does not jump")
    return presentation


# -- the dual cubic of jumping lines --------------------------------------------


def _chart_forms(chart: int) -> tuple[Form, Form, Form]:
    """
    Coordinates of the generic line in the given chart as forms in
    ``(a0, a1, a2, s, t)``, bilinear in the dual coordinates and ``(s, t)``.
    """
    j, k = [index for index in range(3) if index != chart]

    def product(a: int, b: int, sign: int = 1) -> Form:
        exponent = [0] * 5
        exponent[a] += 1
        exponent[b] += 1
        return Form.from_terms({tuple(exponent): sign}, degree=2, nvars=5)

    coordinates = [None, None, None]
    coordinates[chart] = product(j, 3, -1) + product(k, 4, -1)
    coordinates[j] = product(chart, 3)
    coordinates[k] = product(chart, 4)
    return tuple(coordinates)


def _split_binary_coefficients(form: Form) -> list[Form]:
    """
    Coefficients of ``s², st, t²`` of a form in ``(a0, a1, a2, s, t)`` of
    degree 2 in ``(s, t)``, as forms in the dual coordinates.
    """
    buckets: list[dict] = [{}, {}, {}]
    for exponent, value in form.terms:
        if exponent[3] + exponent[4] != 2:
            raise ValueError(f"{form} is not quadratic in the line parameters")
        buckets[exponent[4]][exponent[:3]] = value
    return [Form.from_terms(bucket, degree=form.degree - 2, nvars=3) for bucket in buckets]


def _determinant3(matrix: Sequence[Sequence[Form]]) -> Form:
    (a, b, c), (d, e, f), (g, h, i) = matrix
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _chart_jumping_form(form: Form, chart: int) -> Form:
    line_forms = _chart_forms(chart)
    rows = [
        _split_binary_coefficients(partial.substitute(line_forms)) for partial in gradient(form)
    ]
    determinant = _determinant3(rows)
    try:
        return determinant.divide_by_variable_power(chart, 3).primitive()
    except ValueError as error:
        raise VerificationError(f"chart {chart} determinant {determinant}: {error}") from error


def jumping_curve_cubic(curve: PlaneCurve) -> Form:
    """
    Cubic form in the dual coordinates ``a0, a1, a2`` vanishing exactly on the
    jumping lines of the logarithmic tangent sheaf of a smooth cubic.

    A line is jumping when the restrictions of the three partials, binary
    conics, are linearly dependent; on each chart the determinant of their
    coefficients is the dual cubic times the cube of the chart coordinate.

    Raises:
        PreconditionError: if the curve is not a smooth cubic.
        VerificationError: if the charts disagree.
    """
    _require_smooth_cubic(curve)
    charts = [_chart_jumping_form(curve.form, chart) for chart in range(3)]
    if charts[0].is_zero:
        raise VerificationError(f"vanishing jumping determinant for {curve.form}")
    for chart, other in enumerate(charts[1:], start=1):
        if other != charts[0]:
            raise VerificationError(
                f"chart {chart} gives {other}, chart 0 gives {charts[0]}"
            )
    LOGGER.info(f"jumping cubic of {curve.form}: {charts[0].to_string(('a0', 'a1', 'a2'))}")
    return charts[0]


def triangle_vertex_test(curve: PlaneCurve, line: LineP2) -> bool:
    """
    True if the square of the line's form lies in the span of the partials.
    """
    _require_smooth_cubic(curve)
    partials = [partial.coefficient_vector() for partial in gradient(curve.form)]
    square = (line.form**2).coefficient_vector()
    return span_contains(as_matrix(partials, cols=6), square)


def jumping_report_cubic(
    curve: PlaneCurve,
    lines: Sequence[LineP2] = (),
    samples: int = 100,
    rng: Optional[numpy.random.Generator] = None,
) -> JumpingReport:
    """
    Jumping verdicts of the logarithmic tangent sheaf of a smooth cubic on the
    given lines and on random controls, with the dual cubic attached.

    Raises:
        VerificationError: if the dual cubic and a verdict disagree.
    """
    dual_curve = jumping_curve_cubic(curve)
    presentation, _ = logtangent_presentation(curve)
    rng = rng if rng is not None else numpy.random.default_rng(0)
    controls = random_lines(rng, samples, exclude=lines)
    report = build_jumping_report(
        presentation, presentation.chern.c1, lines, controls, dual_curve=dual_curve
    )
    for verdict in report.tested:
        if not verdict.jumping and dual_curve.evaluate(verdict.line.coordinates) == 0:
            raise VerificationError(
                f"dual cubic vanishes on {verdict.line}, which does not jump"
            )
    return report


# -- lines meeting a cubic in one point -----------------------------------------


def _cube_conditions(a, b, c, d):
    """
    ``a s³ + b s²t + c st² + d t³`` with ``a != 0`` is a cube when both
    returned values vanish.
    """
    return b * b - 3 * a * c, 27 * a * a * d - b**3


def triple_tangent_pencil(curve: PlaneCurve, point: PointP2) -> PencilLines:
    """
    Lines through a point off a cubic that meet the cubic in a single point.

    Along the pencil the restriction of the cubic is a binary cubic whose
    ``s³`` coefficient is the nonzero value at the point, so being a perfect
    cube is two polynomial conditions in the pencil parameter; their gcd
    defines the lines. Irrational roots stay in the polynomial.

    Raises:
        PreconditionError: if the curve is not a cubic or the point is on it.
    """
    if curve.degree != 3:
        raise PreconditionError(f"{curve.form} is not a cubic")
    if curve.contains(point):
        raise PreconditionError(f"{point} lies on {curve.form}")
    coefficients, lam = pencil_restriction(curve.form, point)
    first, second = _cube_conditions(*coefficients)
    condition = sympy.gcd(first, second)

    _, q2 = pencil_axis(point)
    binary = restrict_along(curve.form, point, q2)
    values = [binary.coefficient((3 - i, i)) for i in range(4)]
    at_infinity = all(value == 0 for value in _cube_conditions(*values))

    result = pencil_lines_from_condition(point, condition.as_expr(), lam, at_infinity)
    LOGGER.info(
        f"lines through {point} meeting {curve.form} once: {result.polynomial_text()}"
        f"{' and the line at infinity' if at_infinity else ''}"
    )
    return result
