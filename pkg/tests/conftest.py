import itertools

import numpy as np
import pytest

from parcoord.dataset import Dataset

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_symmetric(rng, p, low=0.0, high=1.0):
    w = rng.uniform(low, high, (p, p))
    w = np.triu(w, 1)
    return w + w.T


def brute_force_cycle(W):
    """Heaviest Hamiltonian cycle by enumerating the (p-1)!/2 distinct cycles.

    Returns (weight, lexicographically smallest optimal cycle starting at 0).
    """
    p = W.shape[0]
    best, best_cycles = -np.inf, []
    for perm in itertools.permutations(range(1, p)):
        if perm[0] > perm[-1]:
            continue
        c = (0,) + perm
        wt = sum(W[c[t], c[(t + 1) % p]] for t in range(p))
        if wt > best + 1e-12:
            best, best_cycles = wt, [c]
        elif abs(wt - best) <= 1e-12:
            best_cycles.append(c)
    canon = []
    for c in best_cycles:
        rev = (0,) + tuple(reversed(c[1:]))
        canon.extend([list(c), list(rev)])
    return best, min(canon)


def brute_force_path(W):
    p = W.shape[0]
    best = -np.inf
    for perm in itertools.permutations(range(p)):
        if perm[0] > perm[-1]:
            continue
        best = max(best, sum(W[a, b] for a, b in zip(perm, perm[1:])))
    return best


def make_dataset(values, names=None, labels=None):
    values = np.asarray(values, dtype=float)
    if names is None:
        names = [f"x{i + 1}" for i in range(values.shape[1])]
    return Dataset(values, tuple(names), labels)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
