"""
Exhaustive enumeration of the classes ``N = (a;b1,..,b6)`` in a box that
satisfy a system of linear constraint rows, by depth-first branching with
interval bound propagation.
"""
import dataclasses
import logging
from typing import Sequence

import numpy

from .._errors import PreconditionError
from .._errors import VerificationError
from ._picard import POINT_COUNT
from ._picard import PicClass
from ._restriction import ConstraintRow
from ._restriction import slope_row

LOGGER = logging.getLogger(__name__)

DEFAULT_BOX = (-8, 8)

UNKNOWNS = POINT_COUNT + 1


@dataclasses.dataclass(frozen=True)
class ValueRow:
    """
    Candidates sharing ``a`` and the multiset of the ``bi``.
    """

    a: int

    values: tuple[int, ...]
    """
    The ``bi`` in nonincreasing order.
    """

    count: int
    """
    Number of ordered candidates with these values.
    """

    deltas: tuple[int, int]
    """
    ``(#{bi = -a-1}, #{bi = -a-2})``.
    """

    annotations: tuple[str, ...] = ()
    """
    Annotation families violated by every candidate of the row.
    """

    def multiset_text(self) -> str:
        return "{" + ",".join(str(value) for value in self.values) + "}"

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "b": list(self.values),
            "count": self.count,
            "deltas": list(self.deltas),
            "annotations": list(self.annotations),
        }


@dataclasses.dataclass(frozen=True)
class CandidateSet:
    """
    Every class of the box satisfying all rows, in lexicographic order of
    ``(a, b1, .., b6)``.
    """

    candidates: tuple[PicClass, ...]

    rows: tuple[ConstraintRow, ...]

    box: tuple[int, int]

    annotations: tuple[ConstraintRow, ...] = ()

    nodes: int = 0
    """
    Search nodes visited.
    """

    def __len__(self) -> int:
        return len(self.candidates)

    def __contains__(self, item: PicClass) -> bool:
        return item in self.candidates

    def violated_annotations(self, candidate: PicClass) -> list[ConstraintRow]:
        return [row for row in self.annotations if not row.satisfied_by(candidate)]

    def value_table(self) -> list[ValueRow]:
        groups: dict[tuple, list[PicClass]] = {}
        for candidate in self.candidates:
            key = (candidate.a, tuple(sorted(candidate.b, reverse=True)))
            groups.setdefault(key, []).append(candidate)

        table = []
        for (a, values), members in sorted(groups.items()):
            families = None
            for member in members:
                violated = {row.family for row in self.violated_annotations(member)}
                families = violated if families is None else families & violated
            table.append(
                ValueRow(
                    a=a,
                    values=values,
                    count=len(members),
                    deltas=(values.count(-a - 1), values.count(-a - 2)),
                    annotations=tuple(sorted(families or ())),
                )
            )
        return table

    def to_dict(self) -> dict:
        return {
            "box": list(self.box),
            "rows": [row.to_dict() for row in self.rows],
            "annotations": [row.to_dict() for row in self.annotations],
            "candidates": [candidate.to_compact() for candidate in self.candidates],
            "value_table": [row.to_dict() for row in self.value_table()],
        }

    def text_lines(self) -> list[str]:
        lines = [
            f"box: [{self.box[0]},{self.box[1]}]^{UNKNOWNS}",
            f"rows: {len(self.rows)}",
            f"candidates: {len(self.candidates)}",
        ]
        for row in self.value_table():
            text = f"a={row.a:<3} b={row.multiset_text():<22} count={row.count:<4} deltas={row.deltas}"
            if row.annotations:
                text += (
                    f"  violates {', '.join(row.annotations)}:"
                    " requires a geometric argument to exclude"
                )
            lines.append(text)
        return lines


def _tableau(rows: Sequence[ConstraintRow]) -> tuple[numpy.ndarray, numpy.ndarray]:
    coefficients = []
    bounds = []
    for row in rows:
        for vector, bound in row.integer_rows():
            coefficients.append(vector)
            bounds.append(bound)
    matrix = numpy.array(coefficients, dtype=numpy.int64).reshape(len(coefficients), UNKNOWNS)
    return matrix, numpy.array(bounds, dtype=numpy.int64)


def _propagate(matrix: list, bounds: list, low: list, high: list) -> bool:
    """
    Tighten the intervals ``low[v] <= x_v <= high[v]`` against every row
    ``Σ c_v x_v <= β`` until nothing changes.

    Returns:
        False if some row cannot be met inside the intervals.
    """
    changed = True
    while changed:
        changed = False
        for coefficients, bound in zip(matrix, bounds):
            minima = [
                c * low[v] if c > 0 else c * high[v] for v, c in enumerate(coefficients)
            ]
            total = sum(minima)
            if total > bound:
                return False
            for v, c in enumerate(coefficients):
                if c == 0:
                    continue
                slack = bound - (total - minima[v])
                if c > 0:
                    limit = slack // c
                    if limit < high[v]:
                        high[v] = limit
                        changed = True
                else:
                    limit = -(slack // -c)
                    if limit > low[v]:
                        low[v] = limit
                        changed = True
                if low[v] > high[v]:
                    return False
    return True


def enumerate_box(
    rows: Sequence[ConstraintRow], box: tuple[int, int] = DEFAULT_BOX
) -> tuple[list[PicClass], int]:
    """
    All integer points of ``box^7`` satisfying the rows, lexicographically
    ordered, with the number of search nodes.

    Raises:
        PreconditionError: for an empty box.
    """
    lo, hi = box
    if lo > hi:
        raise PreconditionError(f"empty search box [{lo},{hi}]")
    if not rows:
        matrix = numpy.zeros((0, UNKNOWNS), dtype=numpy.int64)
        bounds = numpy.zeros(0, dtype=numpy.int64)
    else:
        matrix, bounds = _tableau(rows)
    matrix, bounds = matrix.tolist(), bounds.tolist()

    found = []
    nodes = 0
    stack = [([lo] * UNKNOWNS, [hi] * UNKNOWNS)]
    while stack:
        low, high = stack.pop()
        nodes += 1
        if not _propagate(matrix, bounds, low, high):
            continue
        free = next((v for v in range(UNKNOWNS) if low[v] < high[v]), None)
        if free is None:
            found.append(PicClass.from_vector(low))
            continue
        # reversed so that the smallest value is explored first
        for value in range(high[free], low[free] - 1, -1):
            child_low, child_high = list(low), list(high)
            child_low[free] = child_high[free] = value
            stack.append((child_low, child_high))
    return found, nodes


def destabilizer_search(
    divisor: PicClass,
    rows: Sequence[ConstraintRow],
    box: tuple[int, int] = DEFAULT_BOX,
    strict: bool = False,
    annotations: Sequence[ConstraintRow] = (),
) -> CandidateSet:
    """
    Line bundles ``O(N)`` of the box that could destabilize the logarithmic
    cotangent sheaf of ``divisor``: ``H·N`` at least the slope and every row
    satisfied.

    Args:
        divisor: the boundary divisor ``D``.
        rows: restriction constraints, from
            :func:`~logtangent.blowup.restriction_table` or a constraint file.
        box: common bounds of ``a`` and every ``bi``.
        strict: require ``H·N`` strictly above the slope.
        annotations: rows reported on the candidates but not enforced.

    Raises:
        PreconditionError: for an empty box.
    """
    all_rows = tuple(rows) + (slope_row(divisor, strict=strict),)
    candidates, nodes = enumerate_box(all_rows, box)
    for candidate in candidates:
        if not all(row.satisfied_by(candidate) for row in all_rows):
            raise VerificationError(f"{candidate} escaped a constraint row")
    LOGGER.info(
        f"destabilizer search for {divisor} in [{box[0]},{box[1]}]: "
        f"{len(candidates)} candidates, {nodes} nodes"
    )
    return CandidateSet(
        candidates=tuple(candidates),
        rows=all_rows,
        box=tuple(box),
        annotations=tuple(annotations),
        nodes=nodes,
    )
