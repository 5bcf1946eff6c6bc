import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, passed: bool, detail: str) -> bool:
    """Collect one pass/fail line for the acceptance summary."""
    line = f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_grid(n: int, seed: int = 0):
    """Log-uniform dw in [1e14, 1e17], W in [1e10, 1e15], |a| in [1e8, 1e14] with random sign."""
    rng = np.random.default_rng(seed)
    dw = 10.0 ** rng.uniform(14, 17, n)
    w = 10.0 ** rng.uniform(10, 15, n)
    a = rng.choice([-1.0, 1.0], n) * 10.0 ** rng.uniform(8, 14, n)
    return dw, w, a


@pytest.fixture(scope="session")
def grid():
    return random_grid(100_000, seed=20)
