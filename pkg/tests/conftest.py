from functools import lru_cache

import pytest

from uqlab.scalar import FieldSpec
from uqlab.tensorrep import build_tensor

DEFAULT = (2, 1, 3, 5)  # z1, x, z2, y


@lru_cache(maxsize=None)
def field(backend="exact", p=3, k=1):
    return FieldSpec(backend, p, k)


@lru_cache(maxsize=None)
def tensor(backend="exact", p=3, z1=2, x=1, z2=3, y=5):
    return build_tensor(field(backend, p), z1, x, z2, y)


@pytest.fixture
def exact3():
    return field("exact", 3)


@pytest.fixture
def t3():
    return tensor("exact", 3)


@pytest.fixture
def t5():
    return tensor("exact", 5)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
