"""
Generalized logarithmic sheaves of a smooth curve with marked points, and the
tangent lines of conics.

The sheaf ``Ω¹(log(D, Z))`` of a smooth curve ``D = V(f)`` of degree ``d``
with marked points ``Z`` is assembled as the cokernel of a block matrix

::

    O(-3) ⊕ (⊕ O(-c_k))  --[ K  -w ]-->  O(-2)³ ⊕ (⊕ O(-e_j))
                            [ 0   H ]

where ``K = (x0, x1, x2)ᵗ`` resolves ``Ω¹``, the ``e_j`` are the degrees of
the generators ``g_j`` of the ideal of ``Z`` modulo ``f``, ``H`` holds the
``g``-part of the relations among ``(g_1, .., g_n, f)`` and ``w`` lifts the
residue of each relation to the Koszul resolution.
"""
import itertools
import logging
from fractions import Fraction
from typing import Optional
from typing import Sequence

import numpy

from ._curves import PlaneCurve
from ._curves import PointedCurve
from ._curves import chern_generalized
from ._errors import PreconditionError
from ._errors import VerificationError
from ._forms import Form
from ._forms import PointP2
from ._forms import gradient
from ._forms import monomials
from ._jumping import JumpingReport
from ._jumping import PencilLines
from ._jumping import build_jumping_report
from ._jumping import pencil_axis
from ._jumping import pencil_lines_from_condition
from ._jumping import pencil_restriction
from ._jumping import restrict_along
from ._linalg import as_matrix
from ._linalg import nullspace
from ._linalg import rank
from ._linalg import solve
from ._p1split import LineP2
from ._presentation import ChernPair
from ._presentation import GradedPresentation
from ._presentation import PresentationRole
from ._sampling import random_lines
from ._sampling import random_point
from ._syzygy import SyzygyBasis
from ._syzygy import column_to_vector
from ._syzygy import graded_map_matrix
from ._syzygy import module_kernel
from ._syzygy import multiples_matrix
from ._syzygy import vector_to_column

LOGGER = logging.getLogger(__name__)


# -- ideals of points -----------------------------------------------------------


def _vanishing_forms(points: Sequence[PointP2], degree: int):
    """
    Nullspace of the evaluation of degree-``degree`` monomials at the points.
    """
    basis = monomials(3, degree)
    evaluation = as_matrix(
        [
            [Form.from_terms({exponent: 1}, degree=degree).evaluate(point.coordinates) for exponent in basis]
            for point in points
        ],
        cols=len(basis),
    )
    return nullspace(evaluation)


def ideal_of_points(
    points: Sequence[PointP2], known: Sequence[Form] = ()
) -> tuple[Form, ...]:
    """
    Minimal generators of the ideal of a finite set of points, completing the
    forms in ``known``.

    The ideal of ``k`` points is generated in degree at most ``k``, so the
    degrees ``1..k`` are scanned; in each degree the forms vanishing on the
    points are kept only when they are not multiples of what was found.

    Args:
        points: distinct points.
        known: forms of the ideal taken as given generators; they are not
            returned.

    Raises:
        PreconditionError: for an empty or repeated point set, or a known
            form not vanishing on the points.
    """
    points = list(points)
    if not points:
        raise PreconditionError("the ideal of the empty set is the unit ideal")
    if len(set(points)) != len(points):
        raise PreconditionError(f"repeated point in {[str(p) for p in points]}")
    for form in known:
        bad = [str(p) for p in points if form.evaluate(p.coordinates) != 0]
        if bad:
            raise PreconditionError(f"{form} does not vanish at {', '.join(bad)}")

    found: list[tuple[tuple[Form], int]] = [((form,), form.degree) for form in known]
    generators = []
    for degree in range(1, len(points) + 1):
        vanishing = _vanishing_forms(points, degree)
        if vanishing.shape[1] == 0:
            continue
        known_rows = multiples_matrix(found, [0], degree, 3, Form)
        known_rank = rank(known_rows) if known_rows.shape[0] else 0
        for k in range(vanishing.shape[1]):
            if known_rank == vanishing.shape[1]:
                break
            vector = vanishing[:, k]
            candidate = numpy.vstack([known_rows, as_matrix([vector])])
            candidate_rank = rank(candidate)
            if candidate_rank > known_rank:
                form = Form.from_vector(list(vector), degree, 3).primitive()
                known_rows, known_rank = candidate, candidate_rank
                found.append(((form,), degree))
                generators.append(form)
    LOGGER.debug(
        f"ideal of {len(points)} point(s): generator degrees {[g.degree for g in generators]}"
    )
    return tuple(generators)


def hilbert_burch_matrix(points: Sequence[PointP2]) -> tuple[tuple[Form, ...], SyzygyBasis]:
    """
    Minimal generators of the ideal of the points and their relations.

    With ``n + 1`` generators there are ``n`` relations; the maximal minors of
    the relation matrix generate the ideal again, up to a common scalar.
    """
    generators = ideal_of_points(points)
    degrees = [form.degree for form in generators]
    relations = module_kernel(
        [list(generators)], degrees, [0], sum(degrees), stop_count=len(generators) - 1
    )
    if len(relations) != len(generators) - 1:
        raise VerificationError(
            f"{len(relations)} relation(s) among {len(generators)} generators of a point ideal"
        )
    return generators, relations


# -- the horseshoe presentation -------------------------------------------------


def _koszul_grid() -> list[list[Form]]:
    """
    Columns ``(0, x2, -x1)``, ``(-x2, 0, x0)``, ``(x1, -x0, 0)`` spanning the
    forms orthogonal to the Euler vector.
    """
    x = [Form.variable(i) for i in range(3)]
    zero = Form.zero(1)
    return [
        [zero, -x[2], x[1]],
        [x[2], zero, -x[0]],
        [-x[1], x[0], zero],
    ]


def _lift_through_koszul(eta: Sequence[Form], degree: int) -> tuple[Form, Form, Form]:
    """
    Forms ``w`` of degree ``degree - 1`` with ``eta = V w``.

    Raises:
        VerificationError: if ``eta`` is not orthogonal to the Euler vector.
    """
    grid = _koszul_grid()
    matrix = graded_map_matrix(grid, (1, 1, 1), (0, 0, 0), degree, nvars=3)
    vector = column_to_vector(eta, (0, 0, 0), degree, 3)
    solution = solve(matrix, vector) if matrix.size else None
    if solution is None:
        if all(value == 0 for value in vector):
            return tuple(Form.zero(degree - 1) for _ in range(3))
        raise VerificationError(f"residue lift {[str(e) for e in eta]} is not in the Koszul image")
    return vector_to_column(list(solution), (1, 1, 1), degree, 3)


def generalized_log_presentation(
    pointed: PointedCurve, rng: Optional[numpy.random.Generator] = None
) -> GradedPresentation:
    """
    Cokernel presentation of ``Ω¹(log(D, Z))`` for a smooth curve with a
    non-empty set of marked points.

    Post-conditions checked before returning: the Chern classes read from the
    twists are ``chern_generalized(d, |Z|)``, the matrix is injective, its rank
    drops at every marked point and is full at a random point off ``Z``.

    Args:
        pointed: the smooth curve and its marked points.
        rng: generator of the random control point, seeded with 0 by default.

    Raises:
        PreconditionError: if the curve is not smooth or ``Z`` is empty.
        VerificationError: if a lift or a post-condition fails.
    """
    curve = pointed.curve
    curve.require_smooth()
    points = list(pointed.points)
    if not points:
        raise PreconditionError("the generalized sheaf needs at least one marked point")
    rng = rng if rng is not None else numpy.random.default_rng(0)
    f = curve.form
    d = curve.degree

    g = ideal_of_points(points, known=(f,))
    n = len(g)
    e = [form.degree for form in g]
    degrees = e + [d]
    relations = module_kernel([list(g) + [f]], degrees, [0], sum(degrees), stop_count=n)
    if len(relations) != n:
        raise VerificationError(
            f"expected {n} relation(s) among the generators of I_Z and f, found {len(relations)}"
        )

    grad_f = gradient(f)
    grad_g = [gradient(form) for form in g]
    lifts = []
    for relation, c in relations:
        eta = []
        for i in range(3):
            value = -relation[n] * grad_f[i]
            for j in range(n):
                value = value - Fraction(d, e[j]) * (relation[j] * grad_g[j][i])
            eta.append(value)
        lifts.append(_lift_through_koszul(eta, c - 1))

    x = [Form.variable(i) for i in range(3)]
    rows = []
    for i in range(3):
        rows.append([x[i]] + [-lift[i] for lift in lifts])
    for j in range(n):
        rows.append([Form.zero(3 - e[j])] + [relation[j] for relation, _ in relations])

    presentation = GradedPresentation(
        rows=rows,
        source_degrees=(3,) + tuple(relations.degrees),
        target_degrees=(2, 2, 2) + tuple(e),
        role=PresentationRole.cokernel,
        rank=2,
        chern=chern_generalized(d, len(points)),
        twist=0,
        label=f"log(D,Z) for D = {f} with {len(points)} marked point(s)",
    )
    presentation.check_chern()
    _verify_singular_locus(presentation, points, rng)
    LOGGER.info(
        f"generalized log presentation: target {presentation.target_degrees}, "
        f"source {presentation.source_degrees}, {presentation.chern}"
    )
    return presentation


def _verify_singular_locus(
    presentation: GradedPresentation,
    points: Sequence[PointP2],
    rng: numpy.random.Generator,
    controls: int = 1,
):
    if presentation.generic_rank() != presentation.ncols:
        raise VerificationError(f"the presentation '{presentation.label}' is not injective")
    for point in points:
        if presentation.rank_at(point) == presentation.ncols:
            raise VerificationError(f"the presented sheaf is locally free at the marked point {point}")
    checked = 0
    while checked < controls:
        point = random_point(rng)
        if point in points:
            continue
        if presentation.rank_at(point) != presentation.ncols:
            raise VerificationError(f"the presented sheaf is singular at {point}, off the marked points")
        checked += 1


def steiner_conic_points(conic: PlaneCurve, points: Sequence[PointP2]) -> GradedPresentation:
    """
    Steiner-type resolution ``O(-3)³ -> O(-2)⁵`` of ``Ω¹(log(Q, Z))`` for a
    smooth conic ``Q`` with three marked points.

    Raises:
        PreconditionError: if ``Q`` is not a smooth conic or the points are not
            three distinct points of it.
    """
    if conic.degree != 2:
        raise PreconditionError(f"{conic.form} is not a conic")
    if len(points) != 3:
        raise PreconditionError(f"a Steiner resolution needs 3 marked points, got {len(points)}")
    presentation = generalized_log_presentation(PointedCurve(conic, tuple(points)))
    if presentation.source_degrees != (3, 3, 3) or presentation.target_degrees != (2,) * 5:
        raise VerificationError(
            f"unexpected Steiner shape {presentation.source_degrees} -> {presentation.target_degrees}"
        )
    return presentation


def fixed_steiner_matrix(a: Fraction = 1, b: Fraction = 2) -> GradedPresentation:
    """
    Fixed 5×3 linear matrix with parameters ``a``, ``b`` written for the conic
    ``x0x1 + x1x2 + x2x0`` and the three coordinate points.

    Its columns are ``(x0, x1, x2, 0, 0)``, ``(a x0, b x1, a x2, x0, -x2)`` and
    ``(b x0, a x1, a x2, x1, x1 + x2)``. For ``a != b`` it drops rank exactly at
    the three coordinate points and jumps on the same lines as
    :func:`steiner_conic_points`.
    """
    a, b = Fraction(a), Fraction(b)
    x0, x1, x2 = (Form.variable(i) for i in range(3))
    zero = Form.zero(1)
    columns = [
        [x0, x1, x2, zero, zero],
        [a * x0, b * x1, a * x2, x0, -x2],
        [b * x0, a * x1, a * x2, x1, x1 + x2],
    ]
    rows = [[column[i] for column in columns] for i in range(5)]
    return GradedPresentation(
        rows=rows,
        source_degrees=(3, 3, 3),
        target_degrees=(2,) * 5,
        role=PresentationRole.cokernel,
        rank=2,
        chern=ChernPair(-1, 4),
        label=f"fixed Steiner matrix a={a} b={b}",
    )


# -- tangent lines --------------------------------------------------------------


def tangent_line(curve: PlaneCurve, point: PointP2) -> LineP2:
    """
    Tangent line at a smooth point of a curve, the polar line for a conic.

    Raises:
        PreconditionError: if the point is off the curve or singular on it.
    """
    if not curve.contains(point):
        raise PreconditionError(f"{point} is not on {curve.form}")
    values = [partial.evaluate(point.coordinates) for partial in gradient(curve.form)]
    if not any(values):
        raise PreconditionError(f"{point} is a singular point of {curve.form}")
    return LineP2.of(*values)


def _quadratic_discriminant(binary: Form) -> Fraction:
    a = binary.coefficient((2, 0))
    b = binary.coefficient((1, 1))
    c = binary.coefficient((0, 2))
    return b * b - 4 * a * c


def tangent_lines_through(conic: PlaneCurve, point: PointP2) -> PencilLines:
    """
    Lines through an external point tangent to a smooth conic.

    The pencil member with parameter ``λ`` is tangent when the restricted
    binary quadratic has a double root; over the complex numbers there are
    always two such members, counted with ``λ = ∞``.

    Raises:
        PreconditionError: if the curve is not a smooth conic or the point
            lies on it.
    """
    if conic.degree != 2:
        raise PreconditionError(f"{conic.form} is not a conic")
    conic.require_smooth()
    if conic.contains(point):
        raise PreconditionError(f"{point} lies on the conic {conic.form}")
    (a, b, c), lam = pencil_restriction(conic.form, point)
    condition = (b * b - 4 * a * c).as_expr()
    _, q2 = pencil_axis(point)
    at_infinity = _quadratic_discriminant(restrict_along(conic.form, point, q2)) == 0
    tangents = pencil_lines_from_condition(point, condition, lam, at_infinity)
    if tangents.count != 2:
        raise VerificationError(f"{tangents.count} tangent(s) from {point} to {conic.form}")
    return tangents


def sextic_jumping_tangents(conic: PlaneCurve, points: Sequence[PointP2]) -> tuple[PencilLines, ...]:
    """
    Tangent lines from each of the points to the conic.

    For six blown-up points in general position off a conic, these 12 lines
    are the images of the jumping curves of the logarithmic cotangent sheaf of
    the strict transform of the conic counted twice.

    Raises:
        PreconditionError: if a point lies on the conic or is repeated.
        VerificationError: if the total count is not twice the number of points.
    """
    if len(set(points)) != len(points):
        raise PreconditionError("repeated point among the blown-up points")
    pencils = tuple(tangent_lines_through(conic, point) for point in points)
    total = sum(pencil.count for pencil in pencils)
    if total != 2 * len(points):
        raise VerificationError(f"{total} tangent lines from {len(points)} points")
    rational = sum(len(pencil.lines) for pencil in pencils)
    LOGGER.info(f"{total} tangent lines, {rational} of them rational")
    return pencils


# -- jumping lines --------------------------------------------------------------


def geometric_candidates(pointed: PointedCurve) -> tuple[LineP2, ...]:
    """
    Secants of the marked points followed by the tangent lines at them.
    """
    lines = [LineP2.through(p, q) for p, q in itertools.combinations(pointed.points, 2)]
    lines.extend(tangent_line(pointed.curve, point) for point in pointed.points)
    return tuple(dict.fromkeys(lines))


def jumping_set_pointed_conic(
    presentation: GradedPresentation,
    pointed: PointedCurve,
    candidates: Optional[Sequence[LineP2]] = None,
    samples: int = 200,
    rng: Optional[numpy.random.Generator] = None,
    t_range: Optional[tuple[int, int]] = None,
) -> JumpingReport:
    """
    Check that the secants and tangents at the marked points jump and that a
    random panel of other lines does not.

    Args:
        presentation: the generalized log sheaf of a conic, c1 = -1.
        pointed: the conic and its marked points.
        candidates: lines expected to jump, :func:`geometric_candidates` by
            default.
        samples: number of random control lines.
        rng: generator of the controls, seeded with 0 by default.
        t_range: optional window for the cokernel profile.

    Raises:
        PreconditionError: if the curve is not a conic.
        VerificationError: if a candidate does not jump or a control does.
    """
    if pointed.curve.degree != 2:
        raise PreconditionError(f"{pointed.curve.form} is not a conic")
    rng = rng if rng is not None else numpy.random.default_rng(0)
    if candidates is None:
        candidates = geometric_candidates(pointed)
    candidates = tuple(candidates)
    controls = random_lines(rng, samples, exclude=candidates)
    report = build_jumping_report(
        presentation, presentation.chern.c1, candidates, controls, t_range=t_range
    )
    missing = [str(v.line) for v in report.candidate_verdicts if not v.jumping]
    if missing:
        raise VerificationError(f"candidate line(s) {', '.join(missing)} do not jump")
    extra = [str(v.line) for v in report.control_verdicts if v.jumping]
    if extra:
        raise VerificationError(f"control line(s) {', '.join(extra)} jump")
    return report
