import pytest

from twistk.fock import Truncation, build_basis

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def default_basis():
    return build_basis()


@pytest.fixture(scope="session")
def small_basis():
    return build_basis(Truncation(mode_cutoff=4, charge_window=2, fermion_cutoff=4, energy_cutoff=4))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
