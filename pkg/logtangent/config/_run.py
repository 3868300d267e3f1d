import dataclasses
import enum
import re
from typing import Optional

import numpy

from .._errors import ParseError


class OutputFormat(enum.Enum):
    """
    How a command writes its result on the standard output.
    """

    text = enum.auto()
    json = enum.auto()


@dataclasses.dataclass
class RunConfig:
    """
    Settings shared by every command of a run.

    Identical settings and inputs produce identical output.
    """

    seed: int = 0
    """
    Seed of every randomized panel of points or lines.
    """

    output_format: OutputFormat = OutputFormat.text

    degree_window: Optional[tuple[int, int]] = None
    """
    Inclusive window of twists used to fit cokernel profiles, None to derive
    it from the presentation.
    """

    certify: bool = False
    """
    Certify the jumping lines of whole pencils instead of sampling.
    """

    box: tuple[int, int] = (-8, 8)
    """
    Common bounds of every coefficient in the destabilizer search.
    """

    scenario: str = "generic"
    """
    Tangency hypotheses of the restriction table, see
    :func:`logtangent.blowup.parse_scenario`.
    """

    strict: bool = False
    """
    Require destabilizers of slope strictly above the sheaf's slope.
    """

    samples: int = 200
    """
    Size of the random control panels.
    """

    @classmethod
    def get_default(cls):
        return cls()

    def rng(self) -> numpy.random.Generator:
        """
        A fresh generator, so that each command consumes the same stream.
        """
        return numpy.random.default_rng(self.seed)


_RANGE_PATTERN = re.compile(r"^\s*(-?\d+)\s*:\s*(-?\d+)\s*$")


def parse_range(text: str, allow_empty: bool = False) -> tuple[int, int]:
    """
    Parse ``"lo:hi"`` into an inclusive integer range.

    Raises:
        ParseError: on malformed text, or ``lo > hi`` unless ``allow_empty``.
    """
    match = _RANGE_PATTERN.match(text)
    if not match:
        raise ParseError(f"malformed range '{text}', expected lo:hi")
    low, high = int(match.group(1)), int(match.group(2))
    if low > high and not allow_empty:
        raise ParseError(f"empty range '{text}'")
    return low, high
