import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nvraag.raag import Graph  # noqa: E402

ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def free_times_abelian2():
    """The graph of Z^2 * Z: one edge a-b and a vertex c joined to nothing."""
    return Graph.from_edges(["a", "b", "c"], [("a", "b")])


@pytest.fixture
def four_cycle():
    return Graph.from_edges(["v1", "v2", "v3", "v4"], [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1")])


@pytest.fixture
def acceptance_log(request):
    log = request.config.stash.setdefault(ACCEPTANCE, [])
    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
