"""Wine-sized synthetic data (n=4898, p=12, rounded values and an integer score).

Stands in for the public white-wine file when it is not available locally,
covering the solver comparisons and timings that do not depend on the real
values.
"""

import time
import warnings

import numpy as np
import pytest

from parcoord.concepts import dependence_weights
from parcoord.dataset import Dataset
from parcoord.ordering import exact_order, greedy_order

STATS5 = ("mutual-information", "pearson", "freeman-tukey", "cressie-read", "neyman")


@pytest.fixture(scope="module")
def wine_like():
    rng = np.random.default_rng(4898)
    n = 4898
    f = rng.normal(size=(n, 3))
    cols = []
    for j in range(11):
        x = f @ (rng.normal(size=3) * (0.3 + 0.7 * (j % 3 == 0))) + rng.normal(size=n)
        x = np.exp(0.4 * x) if j % 2 else x
        cols.append(np.round(x, 2 if j % 4 else 1))
    score = np.clip(np.round(6 + 0.6 * f[:, 0] + 0.8 * rng.normal(size=n)), 3, 9)
    return Dataset(np.column_stack(cols + [score]), tuple(f"x{j + 1}" for j in range(12)))


@pytest.mark.parametrize("statistic", STATS5)
def test_exact_beats_greedy_and_is_fast(wine_like, statistic):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        t0 = time.perf_counter()
        w = dependence_weights(wine_like, statistic)
        t1 = time.perf_counter()
        ex = exact_order(w)
        t2 = time.perf_counter()
        gr = greedy_order(w)
        t3 = time.perf_counter()
    assert ex.total >= gr.total - 1e-12
    assert ex.q == gr.q == 12
    assert (t1 - t0) + (t2 - t1) < 5.0
    assert (t1 - t0) + (t3 - t2) < 0.5


def test_tied_score_column_loses_bins(wine_like):
    # seven distinct scores cannot fill eight equal-frequency bins
    w = dependence_weights(wine_like)
    assert np.all(np.isfinite(w.w))
    assert np.all(w.w >= 0)
