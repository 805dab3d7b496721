import pytest

from clusterchar.algebra import Quiver, build_algebra

_criteria: list[tuple[str, str]] = []


def a2(p=5):
    return build_algebra(Quiver.from_edges(2, [("a", 0, 1)]), [], p)


def a3(p=5):
    return build_algebra(Quiver.from_edges(3, [("a", 0, 1), ("b", 1, 2)]), [], p)


def three_cycle(p=5):
    q = Quiver.from_edges(3, [("a", 0, 1), ("b", 1, 2), ("c", 2, 0)])
    return build_algebra(q, [[(1, ("a", "b"))], [(1, ("b", "c"))], [(1, ("c", "a"))]], p)


def kronecker(p=5):
    return build_algebra(Quiver.from_edges(2, [("a", 0, 1), ("b", 0, 1)]), [], p)


def one_vertex(p=5):
    return build_algebra(Quiver.from_edges(1, []), [], p)


FIXTURES = {"A2": a2, "A3": a3, "cycle": three_cycle}


@pytest.fixture(params=sorted(FIXTURES))
def fixture_algebra(request):
    return FIXTURES[request.param]()


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _criteria.append((name, "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_criteria, key=lambda c: int(c[0].split("_")[2])):
        terminalreporter.write_line(f"{outcome}  {name}")
