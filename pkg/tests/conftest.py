import numpy as np
import pytest

from hades.keys import keygen
from hades.params import default_profile, desk_profile
from hades.ring import Ring


def brute_negacyclic(a, b, q):
    """Reference product in Z_q[x]/(x^n+1) with plain Python integers."""
    n = len(a)
    out = [0] * n
    for i in range(n):
        for j in range(n):
            k = i + j
            if k < n:
                out[k] += a[i] * b[j]
            else:
                out[k - n] -= a[i] * b[j]
    return [c % q for c in out]


@pytest.fixture(scope="session")
def small_ring():
    return Ring(4, 17)


@pytest.fixture(scope="session")
def desk():
    return desk_profile()


@pytest.fixture(scope="session")
def desk_fae():
    return desk_profile(flavor="fae")


@pytest.fixture(scope="session")
def default_params():
    return default_profile()


@pytest.fixture(scope="session")
def desk_keys(desk):
    return keygen(desk, np.random.default_rng(1234), record_transcript=True)


@pytest.fixture(scope="session")
def literal_keys(desk):
    return keygen(desk, np.random.default_rng(99), mode="literal", record_transcript=True)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


ACCEPTANCE_LINES = []


@pytest.fixture
def record_criterion():
    def record(number, ok, text):
        ACCEPTANCE_LINES.append(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
