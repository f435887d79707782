import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fairslice import CASES


@pytest.fixture
def ce1_vertical():
    return CASES[1].scenarios["vertical"]


@pytest.fixture
def ce1_horizontal():
    return CASES[1].scenarios["horizontal"]


@pytest.fixture
def ce2():
    return CASES[2].scenarios["main"]


@pytest.fixture
def ce3():
    return CASES[3].scenarios["main"]


@pytest.fixture
def ce4():
    return CASES[4].scenarios["main"]


@pytest.fixture
def ce5():
    return CASES[5].scenarios["main"]


@pytest.fixture
def ce6():
    return CASES[6].scenarios["main"]
