import sys
from functools import lru_cache
from pathlib import Path

import pytest

from semirat import groups

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))


@lru_cache(maxsize=None)
def grp(spec: str):
    """Build once per session; GroupTables are immutable."""
    return groups.build(spec)


# every group of order <= 24 the suites sweep over
SMALL = (
    "cyclic:1", "cyclic:2", "cyclic:6", "cyclic:7", "metacyclic:3,2,2", "metacyclic:4,2,3",
    "metacyclic:2,2,1", "metacyclic:8,2,3", "metacyclic:8,2,5", "metacyclic:8,2,7",
    "metacyclic:7,3,2", "gp:5", "metacyclic:12,2,5", "metacyclic:3,8,2",
    f"cayley:{DATA / 's3.json'}", f"cayley:{DATA / 'q8.json'}",
)


@pytest.fixture(scope="session")
def G5():
    return grp("gp:5")


@pytest.fixture(scope="session")
def M934():
    return grp("metacyclic:9,3,4")


@pytest.fixture(scope="session")
def psl11():
    return grp("psl2:11")


@pytest.fixture(scope="session")
def s3():
    return grp(f"cayley:{DATA / 's3.json'}")


@pytest.fixture(scope="session")
def q8():
    return grp(f"cayley:{DATA / 'q8.json'}")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
