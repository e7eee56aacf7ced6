import pytest

from decotrees.grammar import parse, parse_one
from decotrees.lincomb import LinComb
from decotrees.trees import Edge, Forest, Planted, Tree

ACCEPTANCE_LINES: list[str] = []


def T(text: str) -> Tree:
    return parse_one(text)


def L(text: str) -> LinComb:
    return parse(text)


def E(kind: str = "t", i: int = 0) -> Edge:
    return Edge(kind, (i,))


def I(kind: str, i: int, body) -> Planted:
    return Planted(Edge(kind, (i,)), body if isinstance(body, Tree) else T(body))


def F(*items) -> Forest:
    return Forest(items)


def tensor_lc(*terms) -> LinComb:
    """``tensor_lc((c, left, right), ...)`` as a LinComb of pairs."""
    return LinComb(((l, r), c) for c, l, r in terms)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def small_trees():
    from decotrees.trees import enumerate_trees

    return enumerate_trees(2, (1,), ("t",), (1,))
