import pytest

from wpgraph.constructions import complete, cycle, disjoint_union, path
from wpgraph.graph import Graph

# Vertex order for the localization example: a1 a2 u1 u2 u3 h1 h2 h3.
LOCAL_NAMES = ["a1", "a2", "u1", "u2", "u3", "h1", "h2", "h3"]
LOCAL_EDGES = [
    ("a1", "u1"), ("a1", "u2"), ("a2", "u2"), ("a2", "u3"),
    ("u1", "h1"), ("u2", "h1"), ("u2", "h2"), ("u3", "h3"),
    ("h1", "h2"), ("h2", "h3"),
]


def local_graph() -> Graph:
    idx = {name: i for i, name in enumerate(LOCAL_NAMES)}
    return Graph.from_edges(8, [(idx[a], idx[b]) for a, b in LOCAL_EDGES])


def named(*names: str) -> int:
    return sum(1 << LOCAL_NAMES.index(x) for x in names)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def k2():
    return complete(2)


@pytest.fixture
def p3():
    return path(3)


@pytest.fixture
def k2k2():
    return disjoint_union([complete(2), complete(2)])


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
