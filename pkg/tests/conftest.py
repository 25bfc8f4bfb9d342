import pytest

from csneighborly._precision import get_precision
from csneighborly.curves import CurveSpec
from csneighborly.seeds import build_A, build_A_clustered, build_V, half_set
from csneighborly.verify import assemble

# a verified 3-independent family over [8] (bitmasks, bit i-1 <-> element i)
FAMILY_K3_M8 = [15, 51, 85]


@pytest.fixture(scope="session")
def P_A2():
    return assemble(CurveSpec.Phi(2), build_A(2), get_precision(80))


@pytest.fixture(scope="session")
def P_A22():
    return assemble(CurveSpec.Phi(2), build_A_clustered(2, 2), get_precision(80))


@pytest.fixture(scope="session")
def X2():
    return assemble(CurveSpec.Phi(2), half_set(build_A(2)), get_precision(80))


@pytest.fixture(scope="session")
def P_V3():
    return assemble(CurveSpec.Psi(3, 8), build_V(FAMILY_K3_M8, 8), get_precision(80))


# one line per acceptance criterion, printed after the test summary
ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
