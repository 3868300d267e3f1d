"""
Graded pieces of maps between twisted free modules and their kernels.

Conventions: a map ``⊕ S(-a_j) -> ⊕ S(-b_i)`` is given by a grid of forms whose
entry ``(i, j)`` has degree ``a_j - b_i``. The ``a_j`` are called source
degrees and the ``b_i`` target degrees. In degree ``t`` the map sends
``⊕ S_{t-a_j}`` to ``⊕ S_{t-b_i}``; both sides use the monomial bases of
:func:`logtangent._forms.monomials`, blocks stacked in index order.
"""
import dataclasses
import logging
from typing import Optional
from typing import Sequence

import numpy

from ._forms import Form
from ._forms import monomial_index
from ._forms import monomials
from ._forms import space_dimension
from ._linalg import MatrixQ
from ._linalg import as_matrix
from ._linalg import nullspace
from ._linalg import rank
from ._linalg import zeros

LOGGER = logging.getLogger(__name__)

FormGrid = Sequence[Sequence[Form]]
Column = tuple[Form, ...]


def _grid_nvars(rows: FormGrid, default: int = 3) -> int:
    for row in rows:
        for entry in row:
            return entry.nvars
    return default


def check_grid_degrees(
    rows: FormGrid, source_degrees: Sequence[int], target_degrees: Sequence[int]
):
    """
    Raises:
        ValueError: if the grid shape or an entry degree does not match the twists.
    """
    if len(rows) != len(target_degrees):
        raise ValueError(
            f"grid has {len(rows)} rows but {len(target_degrees)} target degrees"
        )
    for i, row in enumerate(rows):
        if len(row) != len(source_degrees):
            raise ValueError(
                f"row {i} has {len(row)} entries but {len(source_degrees)} source degrees"
            )
        for j, entry in enumerate(row):
            expected = source_degrees[j] - target_degrees[i]
            if not entry.is_zero and entry.degree != expected:
                raise ValueError(
                    f"entry ({i},{j})={entry} has degree {entry.degree}, expected {expected}"
                )


def _block_offsets(degrees: Sequence[int], t: int, nvars: int) -> list[int]:
    offsets = [0]
    for degree in degrees:
        offsets.append(offsets[-1] + space_dimension(nvars, t - degree))
    return offsets


def graded_map_matrix(
    rows: FormGrid,
    source_degrees: Sequence[int],
    target_degrees: Sequence[int],
    t: int,
    nvars: Optional[int] = None,
) -> MatrixQ:
    """
    Matrix of the degree-``t`` piece of a map of twisted free modules.

    Args:
        rows: grid of forms, one list per target summand.
        source_degrees: generator degrees ``a_j`` of the source summands.
        target_degrees: generator degrees ``b_i`` of the target summands.
        t: the degree of the piece.
        nvars: variable count, read from the entries when omitted.

    Returns:
        exact matrix with one column per source monomial and one row per
        target monomial.

    Raises:
        ValueError: if an entry has the wrong degree.
    """
    check_grid_degrees(rows, source_degrees, target_degrees)
    nvars = nvars or _grid_nvars(rows)
    col_offsets = _block_offsets(source_degrees, t, nvars)
    row_offsets = _block_offsets(target_degrees, t, nvars)
    matrix = zeros(row_offsets[-1], col_offsets[-1])

    for j, source in enumerate(source_degrees):
        basis = monomials(nvars, t - source)
        for i, target in enumerate(target_degrees):
            entry = rows[i][j]
            if entry.is_zero or not basis:
                continue
            index = monomial_index(nvars, t - target)
            for position, monomial in enumerate(basis):
                col = col_offsets[j] + position
                for exponent, value in entry.terms:
                    product = tuple(a + b for a, b in zip(exponent, monomial))
                    matrix[row_offsets[i] + index[product], col] += value
    return matrix


def column_to_vector(
    column: Sequence[Form], source_degrees: Sequence[int], t: int, nvars: int
) -> list:
    """
    Coordinates of a column of forms of total degree ``t`` in the degree-``t``
    piece of ``⊕ S(-a_j)``.
    """
    vector = []
    for entry, source in zip(column, source_degrees):
        if entry.is_zero:
            vector.extend([0] * space_dimension(nvars, t - source))
            continue
        if entry.degree != t - source:
            raise ValueError(
                f"entry {entry} has degree {entry.degree}, expected {t - source}"
            )
        vector.extend(entry.coefficient_vector())
    return vector


def vector_to_column(
    vector: Sequence, source_degrees: Sequence[int], t: int, nvars: int, form_type=Form
) -> Column:
    offsets = _block_offsets(source_degrees, t, nvars)
    column = []
    for j, source in enumerate(source_degrees):
        chunk = list(vector[offsets[j] : offsets[j + 1]])
        if t - source < 0:
            column.append(form_type.zero(t - source, nvars=nvars))
        else:
            column.append(form_type.from_vector(chunk, t - source, nvars))
    return tuple(column)


@dataclasses.dataclass(frozen=True)
class SyzygyBasis:
    """
    Minimal generators of the kernel of a graded map, up to a degree bound.
    """

    generators: tuple[Column, ...]
    """
    Kernel columns; column ``k`` has entry ``j`` of degree ``degrees[k] - source_degrees[j]``.
    """

    degrees: tuple[int, ...]
    """
    Total degree of each generator.
    """

    source_degrees: tuple[int, ...]

    target_degrees: tuple[int, ...]

    dmax: int
    """
    Degree up to which the generators are known to be complete.
    """

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(zip(self.generators, self.degrees))

    def as_grid(self) -> list[list[Form]]:
        """
        Matrix whose columns are the generators.
        """
        return [
            [generator[j] for generator in self.generators]
            for j in range(len(self.source_degrees))
        ]


def multiples_matrix(
    generators: Sequence[tuple[Column, int]],
    source_degrees: Sequence[int],
    t: int,
    nvars: int,
    form_type,
) -> MatrixQ:
    """
    Rows are the coordinates of ``m * g`` for every generator ``g`` of degree
    at most ``t`` and every monomial ``m`` of the complementary degree.
    """
    rows = []
    for column, degree in generators:
        if degree > t:
            continue
        for exponent in monomials(nvars, t - degree):
            monomial = form_type.from_terms({exponent: 1}, degree=t - degree, nvars=nvars)
            shifted = tuple(monomial * entry for entry in column)
            rows.append(column_to_vector(shifted, source_degrees, t, nvars))
    width = sum(space_dimension(nvars, t - degree) for degree in source_degrees)
    return as_matrix(rows, cols=width)


def module_kernel(
    rows: FormGrid,
    source_degrees: Sequence[int],
    target_degrees: Sequence[int],
    dmax: int,
    nvars: Optional[int] = None,
    stop_count: Optional[int] = None,
) -> SyzygyBasis:
    """
    Minimal generators of the kernel of a map of twisted free modules, found
    degree by degree up to ``dmax``.

    In each degree the nullspace of :func:`graded_map_matrix` is computed and
    only the vectors outside the span of the multiples of already found
    generators are kept.

    Args:
        rows: grid of forms of the map.
        source_degrees: generator degrees of the source.
        target_degrees: generator degrees of the target.
        dmax: last degree examined.
        nvars: variable count, read from the entries when omitted.
        stop_count: stop as soon as this many generators are found; over a
            polynomial ring in two variables the kernel is free, so its rank
            is a valid stop count.
    """
    nvars = nvars or _grid_nvars(rows)
    form_type = type(rows[0][0]) if rows and rows[0] else Form
    found: list[tuple[Column, int]] = []
    start = min(source_degrees) if source_degrees else 0

    for t in range(start, dmax + 1):
        if stop_count is not None and len(found) >= stop_count:
            break
        kernel = nullspace(graded_map_matrix(rows, source_degrees, target_degrees, t, nvars))
        if kernel.shape[1] == 0:
            continue
        known = multiples_matrix(found, source_degrees, t, nvars, form_type)
        known_rank = rank(known) if known.shape[0] else 0
        if known_rank == kernel.shape[1]:
            continue
        new_count = 0
        for k in range(kernel.shape[1]):
            vector = kernel[:, k]
            candidate = numpy.vstack([known, as_matrix([vector])])
            candidate_rank = rank(candidate)
            if candidate_rank > known_rank:
                known = candidate
                known_rank = candidate_rank
                column = vector_to_column(vector, source_degrees, t, nvars, form_type)
                found.append((column, t))
                new_count += 1
            if known_rank == kernel.shape[1]:
                break
        LOGGER.debug(f"degree {t}: {new_count} new generator(s), {len(found)} total")

    return SyzygyBasis(
        generators=tuple(column for column, _ in found),
        degrees=tuple(degree for _, degree in found),
        source_degrees=tuple(source_degrees),
        target_degrees=tuple(target_degrees),
        dmax=dmax,
    )


def syzygies_up_to(row: Sequence[Form], dmax: Optional[int] = None) -> SyzygyBasis:
    """
    Minimal syzygies ``u`` with ``sum(row[j] * u[j]) == 0`` in total degree at
    most ``dmax``.

    The total degree of a syzygy is ``deg(row[j]) + deg(u[j])``; the Koszul
    syzygy ``(-x1, x0)`` of ``(x0, x1)`` has degree 2.

    Args:
        row: the forms ``G``.
        dmax: degree bound, by default the largest entry degree plus 3.
    """
    row = list(row)
    source_degrees = [form.degree for form in row]
    if dmax is None:
        dmax = max(source_degrees) + 3
    basis = module_kernel([row], source_degrees, [0], dmax)
    LOGGER.debug(f"syzygies of {len(row)} forms up to degree {dmax}: {basis.degrees}")
    return basis


def in_module_span(
    column: Sequence[Form],
    generators: Sequence[Column],
    generator_degrees: Sequence[int],
    source_degrees: Sequence[int],
    degree: int,
) -> bool:
    """
    True if ``column`` (of total degree ``degree``) is a combination of the
    generators with form coefficients.
    """
    nvars = column[0].nvars
    form_type = type(column[0])
    known = multiples_matrix(
        list(zip(generators, generator_degrees)), source_degrees, degree, nvars, form_type
    )
    vector = column_to_vector(column, source_degrees, degree, nvars)
    if known.shape[0] == 0:
        return all(value == 0 for value in vector)
    stacked = numpy.vstack([known, as_matrix([vector])])
    return rank(stacked) == rank(known)
