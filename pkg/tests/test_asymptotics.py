import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from parcoord.asymptotics import (chi2_cdf, chi2_quantile, chi2_sf, independence_pvalue,
                                  reports_to_csv, screen_pairs)
from parcoord.divergence import NeymanZeroCell
from parcoord.histogram import BinningSpec, ContingencyTable, contingency

from conftest import make_dataset


def chi2_pdf(x, k):
    return x ** (k / 2 - 1) * math.exp(-x / 2) / (2 ** (k / 2) * math.gamma(k / 2))


@pytest.mark.parametrize("x, k", [(3.841, 1), (9.488, 4)])
def test_reference_quantiles(x, k):
    # integrate the density directly
    oracle = integrate.quad(chi2_pdf, 0, x, args=(k,), limit=200)[0]
    assert abs(chi2_cdf(x, k) - 0.95) < 5e-4
    assert abs(chi2_cdf(x, k) - oracle) < 1e-8


def test_cdf_at_zero():
    for k in range(1, 30):
        assert chi2_cdf(0.0, k) == 0.0
        assert chi2_sf(0.0, k) == 1.0
        assert chi2_cdf(5e-324, k) == 0.0
        assert chi2_sf(5e-324, k) == 1.0


def test_cdf_against_scipy_grid():
    xs = np.concatenate([np.linspace(0.01, 5, 50), np.linspace(5, 200, 80)])
    worst = 0.0
    for k in (1, 2, 3, 4, 9, 10, 25, 49, 100):
        for x in xs:
            worst = max(worst, abs(chi2_cdf(x, k) - stats.chi2.cdf(x, k)))
            sf = chi2_sf(x, k)
            ref = stats.chi2.sf(x, k)
            assert sf == pytest.approx(ref, rel=1e-8, abs=1e-300)
    assert worst < 1e-10


def test_quantile():
    assert chi2_quantile(0.95, 9) == pytest.approx(stats.chi2.ppf(0.95, 9), abs=1e-8)
    assert chi2_quantile(0.95, 9) == pytest.approx(16.92, abs=0.005)
    with pytest.raises(ValueError):
        chi2_quantile(1.0, 3)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        chi2_cdf(-1.0, 2)
    with pytest.raises(ValueError):
        chi2_cdf(1.0, 0)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 300.0), st.floats(0.0, 50.0), st.integers(1, 60))
def test_monotone_in_x(x, dx, k):
    assert chi2_cdf(x, k) <= chi2_cdf(x + dx, k) + 1e-15
    assert 0.0 <= chi2_cdf(x, k) <= 1.0


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 100.0), st.integers(1, 60))
def test_decreasing_in_dof(x, k):
    assert chi2_cdf(x, k + 1) <= chi2_cdf(x, k) + 1e-15


def test_pvalue_examples():
    r = independence_pvalue(ContingencyTable.from_counts([[25, 25], [25, 25]]), "pearson")
    assert r.test_statistic == 0.0
    assert r.p_value == 1.0
    t = ContingencyTable.from_joint([[0.5, 0.0], [0.0, 0.5]], n=100)
    r = independence_pvalue(t, "pearson")
    assert r.dof == 1
    assert r.test_statistic == pytest.approx(100.0, abs=1e-12)
    assert r.p_value < 1e-20
    assert r.p_value == pytest.approx(stats.chi2.sf(100.0, 1), rel=1e-8)


def test_pvalue_rejects_smoothing_and_propagates_neyman():
    with pytest.raises(ValueError, match="alpha"):
        independence_pvalue(ContingencyTable.from_counts([[3, 1], [2, 4]], alpha=0.5))
    t = ContingencyTable.from_joint([[0.5, 0.0], [0.0, 0.5]], n=100)
    with pytest.raises(NeymanZeroCell):
        independence_pvalue(t, "neyman")


def test_dof_follows_table_shape(rng):
    x, y = rng.normal(size=(2, 400))
    t = contingency(x, y, BinningSpec(5))
    assert independence_pvalue(t).dof == 16


def test_pvalues_roughly_uniform_under_independence():
    rng = np.random.default_rng(8)
    spec = BinningSpec(3)
    ps = []
    for _ in range(300):
        x, y = rng.uniform(size=(2, 2000))
        ps.append(independence_pvalue(contingency(x, y, spec), "pearson").p_value)
    assert stats.kstest(ps, "uniform").pvalue > 0.001
    assert 0.02 < np.mean(np.array(ps) < 0.05) < 0.09


def test_screen_pairs_and_csv(rng):
    z = rng.normal(size=500)
    X = np.column_stack([z, z + 0.1 * rng.normal(size=500), rng.normal(size=500)])
    d = make_dataset(X, names=["a", "b", "c"])
    reports = screen_pairs(d, "mutual-information", BinningSpec(4))
    assert [r.pair for r in reports] == [(0, 1), (0, 2), (1, 2)]
    assert reports[0].p_value < 1e-10
    assert reports[1].p_value > 1e-4
    text = reports_to_csv(reports, d.attribute_names)
    lines = text.splitlines()
    assert lines[0] == "attribute_1,attribute_2,statistic,gi,test_statistic,dof,p_value"
    assert lines[1].startswith("a,b,mutual-information,")
    assert len(lines) == 4
    with pytest.raises(ValueError):
        screen_pairs(d, spec=BinningSpec(4, smoothing_alpha=1.0))
