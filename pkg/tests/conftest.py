import pytest

from psopmcs import build_clique_graph
from psopmcs.testkit import G1, P3, S3


def K(s):
    return frozenset(s)


K1, K2, K3 = K("abc"), K("bcd"), K("ce")


@pytest.fixture
def cg1():
    return build_clique_graph(G1)


@pytest.fixture
def cgp3():
    return build_clique_graph(P3)


@pytest.fixture
def cgs3():
    return build_clique_graph(S3)


# filled by test_acceptance, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip("abc:"))):
            terminalreporter.write_line(line)
