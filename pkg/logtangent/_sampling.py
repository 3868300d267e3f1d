"""
Seeded random panels of points, lines and forms.

Every sampler takes a :class:`numpy.random.Generator`; build one with
``numpy.random.default_rng(seed)`` (or :meth:`logtangent.config.RunConfig.rng`)
so that panels are reproducible.
"""
import logging
from typing import Iterable
from typing import Optional

import numpy

from ._forms import Form
from ._forms import PointP2
from ._forms import monomials
from ._p1split import LineP2

LOGGER = logging.getLogger(__name__)

DEFAULT_BOUND = 50


def _nonzero_triple(rng: numpy.random.Generator, bound: int) -> tuple[int, int, int]:
    while True:
        values = tuple(int(value) for value in rng.integers(-bound, bound + 1, size=3))
        if any(values):
            return values


def random_point(rng: numpy.random.Generator, bound: int = DEFAULT_BOUND) -> PointP2:
    return PointP2(_nonzero_triple(rng, bound))


def random_line(rng: numpy.random.Generator, bound: int = DEFAULT_BOUND) -> LineP2:
    return LineP2(_nonzero_triple(rng, bound))


def random_lines(
    rng: numpy.random.Generator,
    count: int,
    exclude: Iterable[LineP2] = (),
    avoid: Iterable[PointP2] = (),
    bound: int = DEFAULT_BOUND,
) -> list[LineP2]:
    """
    Distinct random lines, none of them in ``exclude`` and none passing
    through a point of ``avoid``.
    """
    excluded = set(exclude)
    avoid = list(avoid)
    lines = []
    while len(lines) < count:
        line = random_line(rng, bound)
        if line in excluded or any(line.contains(point) for point in avoid):
            continue
        excluded.add(line)
        lines.append(line)
    return lines


def random_form(
    rng: numpy.random.Generator,
    degree: int,
    nvars: int = 3,
    bound: int = 9,
    form_type: Optional[type] = None,
) -> Form:
    form_type = form_type or Form
    basis = monomials(nvars, degree)
    values = rng.integers(-bound, bound + 1, size=len(basis))
    return form_type.from_terms(
        zip(basis, (int(value) for value in values)), degree=degree, nvars=nvars
    )
