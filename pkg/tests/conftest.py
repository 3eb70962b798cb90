from fractions import Fraction

import pytest

from homlie import families
from homlie.homalg import LinearSelfMap, twist

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.when == "setup" and report.outcome != "passed":
        _acceptance[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in sorted(_acceptance.items()):
        name = nodeid.split("::")[-1].removeprefix("test_")
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


# builtin Hom-Lie algebras (twisted), several parameters per family
HOM_LIE_CASES = {
    "sl2(1)": lambda: families.sl2(1),
    "sl2(2)": lambda: families.sl2(2),
    "sl2(-1/3)": lambda: families.sl2(Fraction(-1, 3)),
    "sl3(2,3)": lambda: families.sl_n(3, [2, 3]),
    "sl3(-1,1/2)": lambda: families.sl_n(3, [-1, Fraction(1, 2)]),
    "heis(1,1)": lambda: families.heisenberg(1, 1),
    "heis(2,3)": lambda: families.heisenberg(2, 3),
    "heis(1/2,-5)": lambda: families.heisenberg(Fraction(1, 2), -5),
    "abelian(3)": lambda: (families.abelian(3), LinearSelfMap.identity(3)),
    "abelian(4)": lambda: (families.abelian(4), LinearSelfMap.identity(4)),
    "gl2(Ad[[1,1],[0,1]])": lambda: families.matrix_hom_lie(2, [[1, 1], [0, 1]]),
    "gl2(Ad[[2,1],[1,1]])": lambda: families.matrix_hom_lie(2, [[2, 1], [1, 1]]),
}


@pytest.fixture(params=sorted(HOM_LIE_CASES))
def hom_lie(request):
    return twist(*HOM_LIE_CASES[request.param]())
