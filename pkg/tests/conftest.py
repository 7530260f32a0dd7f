from fractions import Fraction

import pytest

from chronopack import BakeItem, Container, Dims3
from chronopack.optimizer import Instance

ACCEPTANCE_LINES: list[str] = []


def bake(item_id, l, w, h, t):
    return BakeItem(item_id, Dims3(l, w, h), t)


@pytest.fixture
def movement_instance():
    """4x1x1 oven where the optimum requires moving X between beats."""
    items = [
        bake("X", 2, 1, 1, 2),
        bake("Y", 1, 1, 1, 1),
        bake("W", 1, 1, 1, 1),
        bake("Z", 2, 1, 1, 1),
    ]
    return Instance(Container(4, 1, 1), items)


@pytest.fixture
def three_cubes():
    items = [bake("1", 1, 1, 1, 1), bake("2", 1, 1, 1, 1), bake("3", 1, 1, 1, 2)]
    return Instance(Container(2, 1, 1), items)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


__all__ = ["bake", "Fraction"]
