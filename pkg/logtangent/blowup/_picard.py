"""
Picard lattice of the blow-up of the plane in six points, the cubic surface.

Classes are written ``aL + b1 E1 + ... + b6 E6`` with ``L`` the pull-back of
a line and ``Ei`` the exceptional curves; the compact form is ``(a;b1,..,b6)``.
"""
import dataclasses
import itertools
import logging
import re
from fractions import Fraction
from typing import Optional
from typing import Sequence

import numpy

from .._errors import ParseError
from .._errors import PreconditionError
from .._errors import VerificationError

LOGGER = logging.getLogger(__name__)

POINT_COUNT = 6

GRAM = numpy.diag([1] + [-1] * POINT_COUNT)
"""
Intersection form on the basis ``L, E1, .., E6``.
"""


@dataclasses.dataclass(frozen=True)
class PicClass:
    """
    Divisor class ``aL + Σ bi Ei`` on the cubic surface.
    """

    a: int

    b: tuple[int, ...] = (0,) * POINT_COUNT
    """
    Coefficients of ``E1 .. E6``.
    """

    def __post_init__(self):
        values = tuple(int(value) for value in self.b)
        if len(values) != POINT_COUNT:
            raise ValueError(f"a class needs {POINT_COUNT} exceptional coefficients, got {values}")
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", values)

    @classmethod
    def exceptional(cls, *indices: int) -> "PicClass":
        """
        Sum of the exceptional classes with the given 1-based indices.
        """
        b = [0] * POINT_COUNT
        for index in indices:
            b[_check_index(index) - 1] += 1
        return cls(0, tuple(b))

    @classmethod
    def from_vector(cls, vector: Sequence[int]) -> "PicClass":
        return cls(vector[0], tuple(vector[1:]))

    @property
    def vector(self) -> tuple[int, ...]:
        return (self.a,) + self.b

    def dot(self, other: "PicClass") -> int:
        return int(numpy.array(self.vector) @ GRAM @ numpy.array(other.vector))

    @property
    def square(self) -> int:
        return self.dot(self)

    def __add__(self, other: "PicClass") -> "PicClass":
        return PicClass.from_vector([x + y for x, y in zip(self.vector, other.vector)])

    def __sub__(self, other: "PicClass") -> "PicClass":
        return self + (-other)

    def __neg__(self) -> "PicClass":
        return PicClass.from_vector([-x for x in self.vector])

    def __mul__(self, factor: int) -> "PicClass":
        if not isinstance(factor, int):
            raise TypeError(f"classes scale by integers, got {factor!r}")
        return PicClass.from_vector([factor * x for x in self.vector])

    __rmul__ = __mul__

    def to_compact(self) -> str:
        return f"({self.a};{','.join(str(value) for value in self.b)})"

    def to_sum(self) -> str:
        """
        The class as ``aL + b1 E1 + ...``, zero terms dropped.
        """
        terms = [(self.a, "L")] + [(value, f"E{i + 1}") for i, value in enumerate(self.b)]
        text = ""
        for value, name in terms:
            if value == 0:
                continue
            magnitude = "" if abs(value) == 1 else str(abs(value))
            if not text:
                text = f"{'-' if value < 0 else ''}{magnitude}{name}"
            else:
                text += f" {'-' if value < 0 else '+'} {magnitude}{name}"
        return text or "0"

    def __str__(self) -> str:
        return self.to_compact()


def _check_index(index: int) -> int:
    if not 1 <= index <= POINT_COUNT:
        raise PreconditionError(f"exceptional index {index} outside 1..{POINT_COUNT}")
    return index


LINE = PicClass(1)

HYPERPLANE = PicClass(3, (-1,) * POINT_COUNT)
"""
Anticanonical polarization ``H = 3L - ΣEi``.
"""

CANONICAL = -HYPERPLANE


def exceptional(index: int) -> PicClass:
    return PicClass.exceptional(index)


def residual_conic_line(index: int) -> PicClass:
    """
    The line ``2L + Ei - ΣEj``: strict transform of the conic through the five
    points other than ``pi``.
    """
    b = [-1] * POINT_COUNT
    b[_check_index(index) - 1] = 0
    return PicClass(2, tuple(b))


def conic_through(indices: Sequence[int]) -> PicClass:
    """
    ``2L - Σ_{i ∈ indices} Ei``.
    """
    return PicClass(2) - PicClass.exceptional(*indices)


def line_through(indices: Sequence[int]) -> PicClass:
    """
    ``L - Σ_{i ∈ indices} Ei``.
    """
    return LINE - PicClass.exceptional(*indices)


def intersect(c: PicClass, d: PicClass) -> int:
    return c.dot(d)


def genus(c: PicClass) -> int:
    """
    Arithmetic genus by adjunction, ``(c² + c·K)/2 + 1``.
    """
    total = c.square + c.dot(CANONICAL)
    if total % 2:
        raise VerificationError(f"odd adjunction number {total} for {c}")
    return total // 2 + 1


def slope_log(divisor: PicClass, polarization: PicClass = HYPERPLANE) -> Fraction:
    """
    Slope of the logarithmic cotangent sheaf along ``divisor``,
    ``(K + D)·H / 2``.
    """
    return Fraction((CANONICAL + divisor).dot(polarization), 2)


def lines27() -> list[PicClass]:
    """
    The 27 lines: the six ``Ei``, the fifteen ``L - Ei - Ej`` and the six
    residual conics ``2L + Ei - ΣEj``.
    """
    lines = [exceptional(i) for i in range(1, POINT_COUNT + 1)]
    lines += [line_through(pair) for pair in itertools.combinations(range(1, POINT_COUNT + 1), 2)]
    lines += [residual_conic_line(i) for i in range(1, POINT_COUNT + 1)]
    for line in lines:
        if line.square != -1 or -line.dot(CANONICAL) != 1:
            raise VerificationError(f"{line} is not a line")
    return lines


def cremona(c: PicClass) -> PicClass:
    """
    Image under the quadratic transformation centered at ``p1, p2, p3``:
    ``L -> 2L - E1 - E2 - E3`` and ``E1 -> L - E2 - E3`` (same for ``E2``,
    ``E3``), the other ``Ei`` fixed.
    """
    a, b1, b2, b3 = c.a, c.b[0], c.b[1], c.b[2]
    return PicClass(
        2 * a + b1 + b2 + b3,
        (-a - b2 - b3, -a - b1 - b3, -a - b1 - b2) + c.b[3:],
    )


@dataclasses.dataclass(frozen=True)
class ConicSumIdentity:
    """
    Three conic classes covering every point twice and their sum.
    """

    conics: tuple[PicClass, PicClass, PicClass]

    total: PicClass

    @property
    def holds(self) -> bool:
        return self.total == 2 * HYPERPLANE


def conic_sum_identity(
    partition: Sequence[Sequence[int]] = ((1, 2), (3, 4), (5, 6))
) -> ConicSumIdentity:
    """
    For a partition of the six points in three pairs, the conics through the
    complements of each pair add up to ``2H``; pairing with a class ``N``
    gives ``2(3a + Σbi)``.

    Raises:
        PreconditionError: if ``partition`` is not a partition in pairs.
    """
    flat = sorted(index for pair in partition for index in pair)
    if len(partition) != 3 or flat != list(range(1, POINT_COUNT + 1)):
        raise PreconditionError(f"{partition} is not a partition of 1..6 in three pairs")
    everything = set(flat)
    conics = tuple(conic_through(sorted(everything - set(pair))) for pair in partition)
    total = conics[0] + conics[1] + conics[2]
    return ConicSumIdentity(conics=conics, total=total)


@dataclasses.dataclass(frozen=True)
class PushforwardRecord:
    """
    Push-forward to the plane of the line bundle of a class: the twist, the
    powers of the point ideals it is multiplied by and the thickened points
    carried by the first direct image.
    """

    divisor: PicClass

    twist: int

    ideal_powers: tuple[tuple[int, int], ...]
    """
    ``(point index, power)`` for every negative coefficient.
    """

    thickenings: tuple[tuple[int, int], ...]
    """
    ``(point index, order)`` of the summands ``O/I^order`` of the first direct
    image, for the coefficients above 2.
    """

    def to_dict(self) -> dict:
        return {
            "class": self.divisor.to_compact(),
            "twist": self.twist,
            "ideal_powers": [list(item) for item in self.ideal_powers],
            "thickenings": [list(item) for item in self.thickenings],
        }

    def text_lines(self) -> list[str]:
        ideals = " ".join(f"I_p{index}^{power}" for index, power in self.ideal_powers)
        direct = " + ".join(f"O/I_p{index}^{order}" for index, order in self.thickenings)
        return [
            f"class: {self.divisor.to_compact()}",
            f"pi_*: O({self.twist}){' ' + ideals if ideals else ''}",
            f"R1pi_*: {direct or '0'}",
        ]


def pushforward_blowup(c: PicClass, points: int = POINT_COUNT) -> PushforwardRecord:
    """
    Push-forward of ``O(c)`` under the blow-up of ``points`` points.

    The first direct image lists ``O/I^(bi-2)`` exactly for ``bi > 2``; a
    coefficient ``bi = 1`` or ``2`` contributes nothing.

    Raises:
        PreconditionError: if a coefficient past ``points`` is nonzero.
    """
    if not 0 <= points <= POINT_COUNT:
        raise PreconditionError(f"cannot blow up {points} points")
    if any(c.b[points:]):
        raise PreconditionError(f"{c} uses exceptional curves beyond the {points} blown-up points")
    ideals = tuple((i + 1, -value) for i, value in enumerate(c.b[:points]) if value < 0)
    thickenings = tuple((i + 1, value - 2) for i, value in enumerate(c.b[:points]) if value > 2)
    return PushforwardRecord(divisor=c, twist=c.a, ideal_powers=ideals, thickenings=thickenings)


_COMPACT_PATTERN = re.compile(r"^\(\s*(-?\d+)\s*;([^)]*)\)$")

_TERM_PATTERN = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(L|E[1-6])")


def parse_class(text: str) -> PicClass:
    """
    Parse ``"(a;b1,..,b6)"`` or ``"aL + b1 E1 + ..."``.

    Raises:
        ParseError: on malformed text.
    """
    stripped = text.strip()
    match = _COMPACT_PATTERN.match(stripped)
    if match:
        parts = [part.strip() for part in match.group(2).split(",")]
        if len(parts) != POINT_COUNT:
            raise ParseError(f"'{text}' needs {POINT_COUNT} exceptional coefficients")
        try:
            return PicClass(int(match.group(1)), tuple(int(part) for part in parts))
        except ValueError as error:
            raise ParseError(f"malformed coefficient in '{text}'") from error

    compact = re.sub(r"\s+", "", stripped)
    if not compact:
        raise ParseError("empty class")
    if compact == "0":
        return PicClass(0)
    vector = [0] * (POINT_COUNT + 1)
    position = 0
    while position < len(compact):
        term = _TERM_PATTERN.match(compact, position)
        if not term or (position > 0 and not term.group(1)):
            raise ParseError(f"malformed class '{text}' at '{compact[position:]}'")
        sign = -1 if term.group(1) == "-" else 1
        value = sign * int(term.group(2) or 1)
        name = term.group(3)
        vector[0 if name == "L" else int(name[1:])] += value
        position = term.end()
    return PicClass.from_vector(vector)


def parse_class_list(text: Optional[str]) -> list[PicClass]:
    """
    Classes separated by whitespace between compact forms, e.g.
    ``"(1;0,0,0,0,0,0) (0;1,0,0,0,0,0)"``.
    """
    if not text:
        return []
    return [parse_class(item) for item in re.findall(r"\([^)]*\)", text)]
