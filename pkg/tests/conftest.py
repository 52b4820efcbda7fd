import random
from importlib import resources

import pytest

from moflow.instances import fig2, random_network, star
from moflow.network import Arc, Network


def sweep_instance(seed: int, d: int) -> Network:
    """Small random instance: n <= 6, m <= 10, capacities <= 3, costs in [0, 5]."""
    rng = random.Random(seed * 7919 + d)
    n = rng.randint(2, 6)
    m = rng.randint(max(n - 1, 1), 10)
    return random_network(n, m, d, maxcost=5, maxcap=3, seed=seed)


def unique_flow_network(d: int = 3) -> Network:
    # a path with l = u everywhere admits exactly one flow
    arcs = (Arc(0, 1, 2, 2, tuple(range(1, d + 1))), Arc(1, 2, 2, 2, tuple([3] * d)))
    return Network(3, (2, 0, -2), arcs, d)


def three_choice_network() -> Network:
    """One unit over three parallel arcs; outcomes (0,4), (1,1), (4,0)."""
    arcs = (Arc(0, 1, 0, 1, (0, 4)), Arc(0, 1, 0, 1, (1, 1)), Arc(0, 1, 0, 1, (4, 0)))
    return Network(2, (1, -1), arcs, 2)


@pytest.fixture
def fig2_net():
    return fig2()


@pytest.fixture
def fig2_path():
    return str(resources.files("moflow") / "data" / "fig2.momcf")


@pytest.fixture
def star2():
    return star(2)


@pytest.fixture
def star3():
    return star(3)


_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    """Record ``(criterion, passed, detail)``; a summary line is printed per criterion."""
    def record(number: int, passed: bool, detail: str):
        _ACCEPTANCE[number] = (passed, detail)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        passed, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
