import numpy as np
import pytest

from dirac_mfg import build_measure, in_G
from dirac_mfg.geometry import _lengths_neighbors

ACCEPTANCE_LINES = []


def random_measure(rng, n_max=12, min_gap=0.3, normalize=True, n=None):
    """Sorted positions on [0, n] with every gap >= min_gap, weights on [0.05, 1]."""
    n = int(rng.integers(1, n_max + 1)) if n is None else n
    span = max(float(n), (n - 1) * min_gap)
    x = np.sort(rng.uniform(0.0, span - (n - 1) * min_gap, n)) + min_gap * np.arange(n)
    a = rng.uniform(0.05, 1.0, n)
    return build_measure(x, a, normalize=normalize)


def random_levels_in_G(rng, m, margin=0.0, max_tries=10_000):
    """Rejection-sample C in G whose bubbles are all longer than ``margin``."""
    x = m.positions
    gaps = np.diff(x)
    top = 1.5 * (gaps.max() if gaps.size else 1.0) ** 2
    for _ in range(max_tries):
        C = rng.uniform(0.005, 1.0, m.n) * rng.uniform(0.05, top)
        if in_G(C, m) and _lengths_neighbors(C, x).min() > margin:
            return C
    raise RuntimeError("no point of G found")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fig1():
    return build_measure([1.0, 2.25, 3.0, 3.75], [0.25] * 4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
