import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conedetect.exact import ConeV  # noqa: E402
from conedetect.exact_pair import ExactPair  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "demos" / "data"


@pytest.fixture
def orthant2():
    return ConeV(2, ((1, 0), (0, 1)))


@pytest.fixture
def skew():
    return ConeV(2, ((2, -1), (-1, 2)))


@pytest.fixture
def running_pair(orthant2, skew):
    return ExactPair(orthant2, skew)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
