import pytest

from nccc.groups import FamilySpec, build_group

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_lines():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def small_groups():
    specs = [
        FamilySpec.dihedral(3), FamilySpec.dihedral(4), FamilySpec.dihedral(6), FamilySpec.dicyclic(2),
        FamilySpec.dicyclic(4), FamilySpec.semidihedral(3), FamilySpec.u6m(2), FamilySpec.umn(2, 3),
        FamilySpec.v8m(2), FamilySpec.v8m(3), FamilySpec.heisenberg(3),
    ]
    return {s.name: (s, build_group(s)) for s in specs}
