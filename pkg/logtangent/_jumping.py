"""
Jumping lines of rank-2 sheaves on the plane.

A line ``L`` is jumping for a rank-2 sheaf ``E`` with ``c1(E)`` in ``{-1, 0}``
when ``h1(E(-1-c1)|L) > 0``; the jump order is that dimension.
"""
import dataclasses
import itertools
import logging
from fractions import Fraction
from typing import Iterable
from typing import Optional
from typing import Sequence

import sympy

from ._errors import PreconditionError
from ._errors import VerificationError
from ._forms import BinaryForm
from ._forms import DUAL_VARIABLES
from ._forms import Form
from ._forms import PointP2
from ._linalg import determinant
from ._linalg import rank
from ._linalg import zeros
from ._p1split import GradedMatrixP1
from ._p1split import LineP2
from ._p1split import SplittingType
from ._presentation import GradedPresentation
from ._presentation import PresentationRole

LOGGER = logging.getLogger(__name__)

MAX_CERTIFY_MINORS = 5000


@dataclasses.dataclass(frozen=True)
class LineVerdict:
    line: LineP2

    jumping: bool

    order: int
    """
    ``h1`` of the normalized restriction.
    """

    splitting: SplittingType
    """
    Splitting type of the sheaf itself (not of its normalized twist).
    """

    candidate: bool = False
    """
    True for lines proposed by the geometry, False for random controls.
    """

    def to_dict(self) -> dict:
        return {
            "line": str(self.line),
            "jumping": self.jumping,
            "order": self.order,
            "splitting": self.splitting.to_dict(),
            "candidate": self.candidate,
        }


def _check_normalized(presentation: GradedPresentation, c1: int):
    if c1 not in (-1, 0):
        raise PreconditionError(
            f"jumping lines are defined for c1 in {{-1, 0}}, got c1={c1}; "
            f"twist the sheaf first"
        )
    if presentation.rank != 2:
        raise PreconditionError(
            f"jumping lines need a rank-2 sheaf, got rank {presentation.rank}"
        )
    if presentation.chern.c1 != c1:
        raise PreconditionError(
            f"the presentation describes a sheaf with c1={presentation.chern.c1}, not {c1}"
        )


def jumping_test(
    presentation: GradedPresentation,
    c1: int,
    line: LineP2,
    t_range: Optional[tuple[int, int]] = None,
    profile: bool = False,
) -> LineVerdict:
    """
    Decide whether a line is jumping for a normalized rank-2 sheaf.

    Args:
        presentation: presentation of the sheaf, see
            :meth:`GradedPresentation.normalized`.
        c1: first Chern class of the sheaf, -1 or 0.
        line: the line to test.
        t_range: optional window forwarded to the cokernel profile.
        profile: split cokernels by fitting their Hilbert profile instead of
            through the transposed kernel.

    Raises:
        PreconditionError: if c1 is not -1 or 0 or disagrees with the presentation.
    """
    _check_normalized(presentation, c1)
    splitting = presentation.restricted_splitting(line, t_range, profile)
    order = splitting.h1(-1 - c1)
    LOGGER.debug(f"line {line}: splitting {splitting}, h1 {order}")
    return LineVerdict(line=line, jumping=order > 0, order=order, splitting=splitting)


@dataclasses.dataclass(frozen=True)
class JumpingReport:
    """
    Verdicts on a panel of lines and the resulting set of jumping lines.
    """

    tested: tuple[LineVerdict, ...]

    certified_jumping_set: tuple[LineP2, ...]

    dual_curve: Optional[Form] = None
    """
    Form in the dual coordinates a0, a1, a2 vanishing on the jumping lines.
    """

    completeness: str = "sampled"
    """
    ``sampled`` when non-candidate lines were only tested on a random panel,
    ``certified`` when an exact elimination backs the set.
    """

    @property
    def candidate_verdicts(self) -> tuple[LineVerdict, ...]:
        return tuple(verdict for verdict in self.tested if verdict.candidate)

    @property
    def control_verdicts(self) -> tuple[LineVerdict, ...]:
        return tuple(verdict for verdict in self.tested if not verdict.candidate)

    def to_dict(self) -> dict:
        return {
            "completeness": self.completeness,
            "dual_curve": self.dual_curve.to_string(DUAL_VARIABLES)
            if self.dual_curve is not None
            else None,
            "jumping_lines": [str(line) for line in self.certified_jumping_set],
            "tested": [verdict.to_dict() for verdict in self.tested],
        }

    def text_lines(self) -> list[str]:
        lines = [f"completeness: {self.completeness}"]
        if self.dual_curve is not None:
            lines.append(f"dual curve: {self.dual_curve.to_string(DUAL_VARIABLES)}")
        lines.append(f"jumping lines: {len(self.certified_jumping_set)}")
        for line in self.certified_jumping_set:
            lines.append(f"  {line}")
        controls = self.control_verdicts
        jumping_controls = sum(1 for verdict in controls if verdict.jumping)
        lines.append(f"controls: {len(controls)} tested, {jumping_controls} jumping")
        return lines


def build_jumping_report(
    presentation: GradedPresentation,
    c1: int,
    candidates: Iterable[LineP2],
    controls: Iterable[LineP2] = (),
    dual_curve: Optional[Form] = None,
    completeness: str = "sampled",
    t_range: Optional[tuple[int, int]] = None,
) -> JumpingReport:
    """
    Test candidate and control lines and collect the jumping ones.

    Raises:
        VerificationError: if ``dual_curve`` does not vanish on a jumping line.
    """
    verdicts = []
    for line in candidates:
        verdict = jumping_test(presentation, c1, line, t_range)
        verdicts.append(dataclasses.replace(verdict, candidate=True))
    for line in controls:
        verdicts.append(jumping_test(presentation, c1, line, t_range))
    jumping = tuple(verdict.line for verdict in verdicts if verdict.jumping)
    if dual_curve is not None:
        for line in jumping:
            if dual_curve.evaluate(line.coordinates) != 0:
                raise VerificationError(
                    f"dual curve {dual_curve} does not vanish on the jumping line {line}"
                )
    LOGGER.info(f"{len(jumping)} jumping line(s) among {len(verdicts)} tested")
    return JumpingReport(
        tested=tuple(verdicts),
        certified_jumping_set=jumping,
        dual_curve=dual_curve,
        completeness=completeness,
    )


# -- pencils of lines -----------------------------------------------------------


def pencil_axis(center: PointP2) -> tuple[PointP2, PointP2]:
    """
    Two coordinate points ``q1``, ``q2`` spanning a line that misses ``center``.

    The pencil through ``center`` is then ``λ -> line(center, q1 + λ q2)``,
    with ``λ = ∞`` standing for ``line(center, q2)``.
    """
    index = next(i for i, value in enumerate(center.coordinates) if value)
    j, k = [other for other in range(3) if other != index]
    q1 = [0, 0, 0]
    q2 = [0, 0, 0]
    q1[j] = 1
    q2[k] = 1
    return PointP2(tuple(q1)), PointP2(tuple(q2))


def pencil_line(
    center: PointP2, q1: PointP2, q2: PointP2, value: Optional[Fraction]
) -> LineP2:
    """
    Member of the pencil with parameter ``value``, ``None`` meaning infinity.
    """
    if value is None:
        return LineP2.through(center, q2)
    moving = PointP2.of(*(Fraction(a) + Fraction(value) * b for a, b in zip(q1, q2)))
    return LineP2.through(center, moving)


def restrict_along(form: Form, start: Sequence, end: Sequence) -> BinaryForm:
    """
    Restriction of a plane form to ``[s:t] -> s*start + t*end``.
    """
    forms = tuple(BinaryForm.linear([start[i], end[i]]) for i in range(3))
    if form.is_zero:
        return BinaryForm.zero(form.degree)
    return form.substitute(forms)


def pencil_restriction(form: Form, center: PointP2) -> tuple[list, sympy.Symbol]:
    """
    Coefficients of ``s^(d-i) t^i`` in the restriction of ``form`` to the pencil
    member with parameter ``λ``, as sympy polynomials in ``λ``.
    """
    q1, q2 = pencil_axis(center)
    lam, s, t = sympy.symbols("l s t")
    coordinates = [center[i] * s + (q1[i] + lam * q2[i]) * t for i in range(3)]
    expression = sympy.Integer(0)
    for exponent, value in form.terms:
        term = sympy.Rational(value.numerator, value.denominator)
        for coordinate, power in zip(coordinates, exponent):
            term *= coordinate**power
        expression += term
    expanded = sympy.Poly(sympy.expand(expression), s, t)
    coefficients = [
        sympy.Poly(expanded.coeff_monomial(s ** (form.degree - i) * t**i), lam, domain="QQ")
        for i in range(form.degree + 1)
    ]
    return coefficients, lam


@dataclasses.dataclass(frozen=True)
class PencilLines:
    """
    Lines of the pencil through a point cut out by a polynomial condition on
    the pencil parameter.
    """

    center: PointP2

    q1: PointP2

    q2: PointP2

    polynomial: tuple[Fraction, ...]
    """
    Coefficients of the monic condition, highest degree first; empty when the
    condition holds on the whole pencil.
    """

    lines: tuple[LineP2, ...]
    """
    Members with a rational parameter satisfying the condition, then the
    member at infinity when it satisfies it.
    """

    at_infinity: bool

    everywhere: bool = False

    @property
    def degree(self) -> int:
        return len(self.polynomial) - 1 if self.polynomial else 0

    @property
    def count(self) -> int:
        """
        Number of members over the complex numbers, with multiplicity.
        """
        return self.degree + (1 if self.at_infinity else 0)

    def polynomial_text(self, variable: str = "l") -> str:
        if self.everywhere:
            return "0"
        symbol = sympy.Symbol(variable)
        expression = sum(
            sympy.Rational(value.numerator, value.denominator) * symbol**power
            for power, value in enumerate(reversed(self.polynomial))
        )
        return sympy.sstr(expression)

    def to_dict(self) -> dict:
        return {
            "center": str(self.center),
            "axis": [str(self.q1), str(self.q2)],
            "polynomial": self.polynomial_text(),
            "lines": [str(line) for line in self.lines],
            "at_infinity": self.at_infinity,
            "everywhere": self.everywhere,
        }


def pencil_lines_from_condition(
    center: PointP2, condition, symbol: sympy.Symbol, at_infinity: bool
) -> PencilLines:
    """
    Build :class:`PencilLines` from a sympy polynomial condition in ``symbol``.
    """
    q1, q2 = pencil_axis(center)
    poly = sympy.Poly(condition, symbol, domain="QQ")
    if poly.is_zero:
        return PencilLines(center, q1, q2, tuple(), tuple(), at_infinity, True)
    poly = poly.monic()
    coefficients = tuple(Fraction(int(value.p), int(value.q)) for value in poly.all_coeffs())
    lines = []
    for root in sorted(poly.ground_roots()):
        lines.append(pencil_line(center, q1, q2, Fraction(int(root.p), int(root.q))))
    if at_infinity:
        lines.append(pencil_line(center, q1, q2, None))
    return PencilLines(center, q1, q2, coefficients, tuple(lines), at_infinity)


# -- pencil certification -------------------------------------------------------


def _restricted_along(
    presentation: GradedPresentation, start: Sequence, end: Sequence
) -> GradedMatrixP1:
    forms = tuple(BinaryForm.linear([start[i], end[i]]) for i in range(3))
    entries = tuple(
        tuple(
            entry.substitute(forms) if not entry.is_zero else BinaryForm.zero(entry.degree)
            for entry in row
        )
        for row in presentation.rows
    )
    return GradedMatrixP1(entries, presentation.source_degrees, presentation.target_degrees)


def _h1_matrix(restricted: GradedMatrixP1, role: PresentationRole, degree: int):
    """
    Matrix ``X`` and count ``N`` with ``h1 = N - rank(X)`` for the presented
    sheaf twisted by ``degree``.
    """
    dual = restricted.transpose().graded_piece(-degree - 2)
    if role is PresentationRole.cokernel:
        return dual, dual.shape[1]
    direct = restricted.graded_piece(degree)
    matrix = zeros(direct.shape[0] + dual.shape[0], direct.shape[1] + dual.shape[1])
    matrix[: direct.shape[0], : direct.shape[1]] = direct
    matrix[direct.shape[0] :, direct.shape[1] :] = dual
    return matrix, direct.shape[0] + dual.shape[0]


def _minor(matrix, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
    return determinant(matrix[list(rows), :][:, list(cols)])


def certify_pencil(
    presentation: GradedPresentation, center: PointP2, c1: int
) -> PencilLines:
    """
    Exact jumping lines through ``center`` for a normalized rank-2 sheaf.

    Along the pencil the Serre-dual graded piece computing ``h1`` has entries
    polynomial in the pencil parameter. Its maximal minors are interpolated
    from exact evaluations, their gcd is computed with sympy and the rational
    roots give the jumping lines; irrational ones stay in the polynomial.

    Raises:
        PreconditionError: for an invalid normalization, or when the number
            of minors is too large for this method.
    """
    _check_normalized(presentation, c1)
    q1, q2 = pencil_axis(center)
    degree = -1 - c1 - presentation.twist
    role = presentation.role

    def matrix_at(value: Optional[int]) -> tuple:
        if value is None:
            moving = q2.coordinates
        else:
            moving = [Fraction(a) + Fraction(value) * b for a, b in zip(q1, q2)]
        restricted = _restricted_along(presentation, center.coordinates, moving)
        return _h1_matrix(restricted, role, degree)

    infinity, needed = matrix_at(None)
    at_infinity = (rank(infinity) if infinity.size else 0) < needed
    nrows, ncols = infinity.shape
    lam = sympy.Symbol("l")
    if needed > min(nrows, ncols):
        LOGGER.info(f"h1 is positive on every line through {center}")
        return pencil_lines_from_condition(center, sympy.Integer(0), lam, True)

    row_sets = list(itertools.combinations(range(nrows), needed))
    col_sets = list(itertools.combinations(range(ncols), needed))
    if len(row_sets) * len(col_sets) > MAX_CERTIFY_MINORS:
        raise PreconditionError(
            f"certification needs {len(row_sets) * len(col_sets)} minors of size "
            f"{needed}, more than {MAX_CERTIFY_MINORS}"
        )

    entry_degree = max(
        [entry.degree for row in presentation.rows for entry in row if not entry.is_zero]
        or [0]
    )
    evaluations = [matrix_at(value)[0] for value in range(needed * entry_degree + 1)]

    common = sympy.Integer(0)
    for rows in row_sets:
        for cols in col_sets:
            samples = []
            for value, matrix in enumerate(evaluations):
                minor = _minor(matrix, rows, cols)
                samples.append((value, sympy.Rational(minor.numerator, minor.denominator)))
            common = sympy.gcd(common, sympy.interpolate(samples, lam))
            if common.is_number and common != 0:
                break
        if common.is_number and common != 0:
            break

    result = pencil_lines_from_condition(center, common, lam, at_infinity)
    LOGGER.info(f"pencil through {center}: {len(result.lines)} rational jumping line(s)")
    return result
