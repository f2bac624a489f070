import pytest

from combword.combing import build_direct_product, build_free_group_structure
from combword.oracle import FreeOracle, ProductOracle
from combword.structfile import load_structure

# filled by the acceptance module, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def f1():
    return build_free_group_structure(1)


@pytest.fixture(scope="session")
def f2():
    return build_free_group_structure(2)


@pytest.fixture(scope="session")
def o1():
    return FreeOracle(1)


@pytest.fixture(scope="session")
def o2():
    return FreeOracle(2)


@pytest.fixture(scope="session")
def f1xf1(f1, o1):
    return build_direct_product(f1, f1, o1, o1)


@pytest.fixture(scope="session")
def f2xf2(f2, o2):
    return build_direct_product(f2, f2, o2, o2)


@pytest.fixture(scope="session")
def o11(o1):
    return ProductOracle([o1, o1])


@pytest.fixture(scope="session")
def o22(o2):
    return ProductOracle([o2, o2])


@pytest.fixture(scope="session")
def f2xf2_file():
    return load_structure("f2xf2.struct")
