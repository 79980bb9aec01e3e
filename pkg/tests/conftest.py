import random
import sys

import pytest

from mex.core import BasisPair, random_weights
from mex.instances import wheel


def pair(M, red: str, blue: str) -> BasisPair:
    """Pair from space-separated label lists."""
    return BasisPair.from_labels(M, red.split(), blue.split())


def seeded_weights(M, seed: int, elements=None):
    return random_weights(M.ground if elements is None else elements, random.Random(seed))


@pytest.fixture
def w5():
    return wheel(5)


@pytest.fixture
def wheel5_pairs(w5):
    A = pair(w5, "s1 s2 r2 r3", "s3 s4 r4 r1")
    B = pair(w5, "s1 s2 r4 r3", "s3 s4 r2 r1")
    C = pair(w5, "s2 s3 r3 r4", "s4 s1 r1 r2")
    return A, B, C


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for result in sorted(acceptance.RESULTS):
        terminalreporter.write_line(acceptance.format_result(*result))
