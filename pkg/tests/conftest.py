import sys
from importlib.resources import files

import pytest

from evoalg.io import parse_algebra, read_matrix

DATA = files("evoalg") / "data"


def data_path(name: str):
    return DATA / name


@pytest.fixture
def load():
    return lambda name: parse_algebra(data_path(name))


@pytest.fixture
def load_matrix():
    return lambda name: read_matrix(data_path(name))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.summary_lines():
        terminalreporter.write_line(line)
