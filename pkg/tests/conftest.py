import numpy as np
import pytest

from geophase.harness import random_pure_state
from geophase.qstate import PureState2Q

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_states(n, base_seed=1000):
    return [random_pure_state(base_seed + k) for k in range(n)]


def random_hermitian(rng, n=4):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return x + x.conj().T


def state_from_complex(z):
    return PureState2Q.normalized(np.asarray(z, dtype=complex))
