"""
Run settings shared by the command-line front end and the library calls it
makes.
"""
__all__ = [
    "RunConfig",
    "OutputFormat",
    "parse_range",
]

from ._run import RunConfig
from ._run import OutputFormat
from ._run import parse_range
