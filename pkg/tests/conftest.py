import pytest

from inqi import load_fixture
from inqi.syntax import Dialect, parse_formula


def P(text: str, dialect: Dialect | str = Dialect.INQI):
    return parse_formula(text, dialect)


@pytest.fixture(scope="session")
def fix_a():
    return load_fixture("FIX_A")


@pytest.fixture(scope="session")
def fix_b():
    return load_fixture("FIX_B")


@pytest.fixture(scope="session")
def fix_c():
    return load_fixture("FIX_C")
