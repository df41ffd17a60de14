"""Chi-square calibration of the dependence GI.

Under independence, ``2 n GI`` computed on an unsmoothed I x J table is
asymptotically chi-square with (I - 1)(J - 1) degrees of freedom for every
built-in statistic. This module supplies the chi-square distribution
function and an independence screen built on it.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .dataset import Dataset
from .divergence import get_statistic, gi_discrete
from .histogram import BinningSpec, ContingencyTable, bin_edges, contingency

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 10_000


def _gamma_series(a: float, x: float) -> float:
    """Lower regularized incomplete gamma P(a, x) by its power series."""
    term = total = 1.0 / a
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_cf(a: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(a, x) by a continued fraction (modified Lentz)."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def _check(x, dof):
    if dof <= 0:
        raise ValueError(f"degrees of freedom must be positive, got {dof}")
    if x < 0 or math.isnan(x):
        raise ValueError(f"chi-square argument must be >= 0, got {x}")


def chi2_cdf(x: float, dof: float) -> float:
    """P(X <= x) for X ~ chi-square(dof)."""
    _check(x, dof)
    a, hx = 0.5 * dof, 0.5 * x
    if hx == 0:  # also catches subnormal x that underflows when halved
        return 0.0
    if math.isinf(x):
        return 1.0
    if hx < a + 1.0:
        return min(1.0, _gamma_series(a, hx))
    return max(0.0, 1.0 - _gamma_cf(a, hx))


def chi2_sf(x: float, dof: float) -> float:
    """P(X > x); computed directly so tiny tail probabilities keep their precision."""
    _check(x, dof)
    a, hx = 0.5 * dof, 0.5 * x
    if hx == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if hx < a + 1.0:
        return max(0.0, 1.0 - _gamma_series(a, hx))
    return min(1.0, _gamma_cf(a, hx))


@dataclass(frozen=True)
class ScreeningReport:
    pair: tuple[int, int]
    statistic: str
    gi: float
    test_statistic: float
    dof: int
    p_value: float


def independence_pvalue(t: ContingencyTable, g="mutual-information",
                        pair: tuple[int, int] = (0, 1)) -> ScreeningReport:
    """Asymptotic p-value for independence of the two binned attributes."""
    g = get_statistic(g)
    if t.alpha != 0:
        raise ValueError("screening needs an unsmoothed table (alpha = 0); "
                         "smoothing breaks the chi-square calibration")
    gi = gi_discrete(t, g)
    I, J = t.shape
    dof = (I - 1) * (J - 1)
    stat = 2.0 * t.n * gi
    return ScreeningReport(tuple(pair), g.name, gi, stat, dof, chi2_sf(max(stat, 0.0), dof))


def screen_pairs(d: Dataset, g="mutual-information", spec: BinningSpec = BinningSpec()) -> list[ScreeningReport]:
    """Independence screen over every attribute pair, in index order."""
    if spec.smoothing_alpha != 0:
        raise ValueError("screening needs alpha = 0")
    edges = [bin_edges(d.values[:, c], spec) for c in range(d.p)]
    out = []
    for i in range(d.p):
        for j in range(i + 1, d.p):
            t = contingency(d.values[:, i], d.values[:, j], spec, edges[i], edges[j])
            try:
                out.append(independence_pvalue(t, g, (i, j)))
            except ValueError as exc:
                raise type(exc)(f"pair ({d.attribute_names[i]}, {d.attribute_names[j]}): {exc}") from exc
    return out


def reports_to_csv(reports, names) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["attribute_1", "attribute_2", "statistic", "gi", "test_statistic", "dof", "p_value"])
    for r in reports:
        i, j = r.pair
        out.writerow([names[i], names[j], r.statistic, repr(r.gi), repr(r.test_statistic),
                      r.dof, repr(r.p_value)])
    return buf.getvalue()


def chi2_quantile(prob: float, dof: float) -> float:
    """Inverse of :func:`chi2_cdf` by bisection (used for reporting reference values)."""
    if not 0 < prob < 1:
        raise ValueError("probability must lie in (0, 1)")
    lo, hi = 0.0, max(1.0, dof)
    while chi2_cdf(hi, dof) < prob:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if chi2_cdf(mid, dof) < prob:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)

