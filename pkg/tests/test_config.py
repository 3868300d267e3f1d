import pytest

from logtangent import ParseError
from logtangent.config import OutputFormat
from logtangent.config import RunConfig
from logtangent.config import parse_range


def test_defaults():
    config = RunConfig.get_default()
    assert config.seed == 0
    assert config.output_format is OutputFormat.text
    assert config.degree_window is None
    assert config.box == (-8, 8)
    assert config.scenario == "generic"
    assert not config.strict and not config.certify
    assert config.samples == 200


def test_rng_is_reproducible():
    config = RunConfig(seed=7)
    first = config.rng().integers(0, 1000, size=5).tolist()
    second = config.rng().integers(0, 1000, size=5).tolist()
    assert first == second
    assert RunConfig(seed=8).rng().integers(0, 1000, size=5).tolist() != first


def test_parse_range():
    assert parse_range("-3:3") == (-3, 3)
    assert parse_range(" 0 : 4 ") == (0, 4)
    assert parse_range("3:1", allow_empty=True) == (3, 1)


@pytest.mark.parametrize("text", ["3:1", "abc", "1:", "1:2:3", ""])
def test_parse_range_errors(text: str):
    with pytest.raises(ParseError):
        parse_range(text)
