import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import EXAMPLE_TEXT, example_database  # noqa: E402


@pytest.fixture
def example_text():
    return EXAMPLE_TEXT


@pytest.fixture
def example_db():
    return example_database()


# Dense ids in the running example (labels 1..5 map to A..E).
A, B, C, D, E = range(5)


@pytest.fixture
def ids():
    return {"A": A, "B": B, "C": C, "D": D, "E": E}
