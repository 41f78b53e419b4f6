import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polysew import cyclic_polytope, find_towers, make_polytope, sew  # noqa: E402


@pytest.fixture(scope="session")
def pentagon():
    return cyclic_polytope(5, 2)


@pytest.fixture(scope="session")
def c64():
    return cyclic_polytope(6, 4)


@pytest.fixture(scope="session")
def c74():
    return cyclic_polytope(7, 4)


@pytest.fixture(scope="session")
def c96():
    return cyclic_polytope(9, 6)


@pytest.fixture(scope="session")
def c74_towers(c74):
    return find_towers(c74)


@pytest.fixture(scope="session")
def c96_towers(c96):
    # a spread of towers, not just the first few which share Phi_1
    towers = find_towers(c96)
    return towers[:: max(1, len(towers) // 8)]


@pytest.fixture(scope="session")
def sewn8(c74, c74_towers):
    return sew(c74, c74_towers[0])


@pytest.fixture(scope="session")
def cross4():
    facets = []
    for bits in range(16):
        facets.append([2 * i + (bits >> i & 1) for i in range(4)])
    return make_polytope(4, 8, facets)


def pytest_terminal_summary(terminalreporter):
    import re

    import test_acceptance

    results = dict(getattr(test_acceptance, "RESULTS", {}))
    ran = set()
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", getattr(rep, "nodeid", ""))
            if m:
                ran.add(int(m.group(1)))
    if not ran:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ran):
        # a criterion that raised before recording still gets a line
        terminalreporter.write_line(results.get(n, f"criterion {n:>2}: FAIL  did not complete (see traceback)"))
