"""General information between two probability measures.

For measures F and H on the plane and a generator G with G(1) = 0,

    GI = 1/G''(1) * integral of G(dF/dH) dH

Dividing by G''(1) puts every generator on the scale of half the Pearson
chi-square near independence, so ``2 n GI`` is comparable across statistics.
"""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .dataset import Dataset
from .histogram import BinningSpec, ContingencyTable, bin_edges, contingency
from .weights import WeightMatrix, symmetric_from_pairs

NEYMAN_ESCALATION_ALPHA = 0.5


class NeymanZeroCell(ValueError):
    """A statistic that diverges at u = 0 met an empty cell with positive expectation."""


@dataclass(frozen=True)
class GStatistic:
    name: str
    g: Callable[[np.ndarray], np.ndarray]
    gpp1: Fraction
    gp1: Fraction  # G'(1)
    unbounded_at_zero: bool = False

    def __call__(self, u):
        return self.g(np.asarray(u, dtype=float))

    def centered(self, u):
        """G(u) - G'(1) (u - 1).

        Same integral against H as G itself, because dF/dH - 1 integrates to
        zero; for convex G every term is nonnegative.
        """
        u = np.asarray(u, dtype=float)
        return self.g(u) - float(self.gp1) * (u - 1.0)

    def __repr__(self):
        return f"GStatistic({self.name!r}, gpp1={self.gpp1})"


def _u_log_u(u):
    pos = u > 0
    return np.where(pos, u * np.log(np.where(pos, u, 1.0)), 0.0)


def _pearson(u):
    return (u - 1.0) ** 2


def _freeman_tukey(u):
    # u (1 - 1/sqrt(u)), continuous at 0
    return u - np.sqrt(u)


def _neyman(u):
    with np.errstate(divide="ignore"):
        return np.where(u > 0, (1.0 - u) ** 2 / np.where(u > 0, u, 1.0), np.inf)


def _cressie_read(u):
    return u * (np.cbrt(u * u) - 1.0)


STATISTICS: dict[str, GStatistic] = {
    s.name: s
    for s in (
        GStatistic("mutual-information", _u_log_u, Fraction(1), Fraction(1)),
        GStatistic("log-likelihood-ratio", lambda u: 2.0 * _u_log_u(u), Fraction(2), Fraction(2)),
        GStatistic("pearson", _pearson, Fraction(2), Fraction(0)),
        GStatistic("freeman-tukey", _freeman_tukey, Fraction(1, 4), Fraction(1, 2)),
        GStatistic("neyman", _neyman, Fraction(2), Fraction(0), unbounded_at_zero=True),
        GStatistic("cressie-read", _cressie_read, Fraction(10, 9), Fraction(2, 3)),
    )
}


def get_statistic(g: str | GStatistic) -> GStatistic:
    if isinstance(g, GStatistic):
        return g
    try:
        return STATISTICS[g]
    except KeyError:
        raise ValueError(f"unknown statistic {g!r}; choose from {sorted(STATISTICS)}") from None


def density_ratio(t: ContingencyTable) -> tuple[np.ndarray, np.ndarray]:
    """Cellwise dF/dH and dH for the dependence concept.

    The ratio is set to 1 where the product of marginals vanishes.
    """
    h = t.independence
    with np.errstate(divide="ignore", invalid="ignore"):
        u = np.where(h > 0, t.joint / np.where(h > 0, h, 1.0), 1.0)
    return u, h


def has_zero_cells(t: ContingencyTable) -> bool:
    u, h = density_ratio(t)
    return bool(np.any((u == 0) & (h > 0)))


def gi_discrete(t: ContingencyTable, g: str | GStatistic) -> float:
    """General information of the joint table relative to its marginal product."""
    g = get_statistic(g)
    u, h = density_ratio(t)
    if g.unbounded_at_zero and np.any((u == 0) & (h > 0)):
        raise NeymanZeroCell(
            f"{g.name} is infinite on a table with empty cells; "
            "use smoothing (alpha > 0) or another statistic"
        )
    return float(np.sum(g(u) * h) / float(g.gpp1))


def gi_continuous_mc(f, h, h_sampler, g: str | GStatistic, m: int = 4096, seed=0,
                     proposal=None, return_se: bool = False):
    """Monte Carlo estimate of GI between two densities.

    ``f`` and ``h`` map an (m, d) array of points to density values and
    ``h_sampler(rng, m)`` draws m points from h. ``seed`` is anything
    accepted by ``numpy.random.default_rng``.

    With ``proposal=(q, q_sampler)`` the points are drawn from q instead and
    reweighted by h/q. A proposal that covers both f and h (for instance
    their equal mixture) keeps the estimator's variance bounded when f puts
    mass far into the tails of h.
    """
    g = get_statistic(g)
    if m < 1:
        raise ValueError(f"sample count must be >= 1, got {m}")
    rng = np.random.default_rng(seed)
    sampler = h_sampler if proposal is None else proposal[1]
    z = sampler(rng, m)
    fz = np.asarray(f(z), dtype=float)
    hz = np.asarray(h(z), dtype=float)
    if not (np.all(np.isfinite(fz)) and np.all(np.isfinite(hz))):
        raise ValueError("non-finite density value encountered")
    if proposal is None:
        if np.any(hz <= 0):
            raise ValueError("reference density must be positive on its own samples")
        terms = g.centered(fz / hz)
    else:
        qz = np.asarray(proposal[0](z), dtype=float)
        if not np.all(np.isfinite(qz)) or np.any(qz <= 0):
            raise ValueError("proposal density must be positive and finite on its samples")
        with np.errstate(divide="ignore", invalid="ignore"):
            u = np.where(hz > 0, fz / np.where(hz > 0, hz, 1.0), 1.0)
        terms = g.centered(u) * (hz / qz)
    terms = terms / float(g.gpp1)
    value = float(np.mean(terms))
    if return_se:
        se = float(np.std(terms, ddof=1) / np.sqrt(m)) if m > 1 else float("inf")
        return value, se
    return value


def _pairs(p: int):
    return [(i, j) for i in range(p) for j in range(i + 1, p)]


def default_workers() -> int:
    env = os.environ.get("PARCOORD_THREADS")
    if env:
        return max(1, int(env))
    return 1


def _run_pairs(func, pairs, names, workers):
    def annotated(pair):
        try:
            return func(*pair)
        except (ValueError, ArithmeticError) as exc:
            i, j = pair
            raise type(exc)(f"pair ({names[i]}, {names[j]}): {exc}") from exc

    workers = default_workers() if workers is None else workers
    if workers > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(annotated, pairs))
    return [annotated(pr) for pr in pairs]


def gi_matrix(d: Dataset, concept="dependence", g: str | GStatistic = "mutual-information",
              spec: BinningSpec = BinningSpec(), workers: int | None = None,
              auto_smooth: bool = True) -> WeightMatrix:
    """Pairwise GI for every attribute pair of ``d``.

    ``concept`` is either ``"dependence"`` (binned joint against product of
    binned marginals) or a callable ``(i, j) -> float`` computing GI for one
    pair. Pairs are independent and are assembled in index order whatever
    the thread schedule.

    For the dependence concept with a statistic that diverges on empty cells
    and no smoothing requested, the whole matrix is recomputed with
    alpha = 0.5 (with a warning) as soon as any pair has an empty cell;
    pass ``auto_smooth=False`` to get a NeymanZeroCell error instead.
    """
    g = get_statistic(g)
    p = d.p
    if p < 2:
        raise ValueError("need at least two attributes")
    pairs = _pairs(p)
    names = d.attribute_names

    if concept == "dependence":
        edges = [bin_edges(d.values[:, c], spec) for c in range(p)]

        def table(i, j, s=spec):
            return contingency(d.values[:, i], d.values[:, j], s, edges[i], edges[j])

        if (auto_smooth and g.unbounded_at_zero and spec.smoothing_alpha == 0
                and any(has_zero_cells(table(i, j)) for i, j in pairs)):
            warnings.warn(
                f"{g.name} statistic: empty cells found, smoothing with alpha="
                f"{NEYMAN_ESCALATION_ALPHA}",
                stacklevel=2,
            )
            smoothed = spec.with_alpha(NEYMAN_ESCALATION_ALPHA)
            values = _run_pairs(lambda i, j: gi_discrete(table(i, j, smoothed), g), pairs, names, workers)
        else:
            values = _run_pairs(lambda i, j: gi_discrete(table(i, j), g), pairs, names, workers)
    elif callable(concept):
        values = _run_pairs(concept, pairs, names, workers)
    else:
        raise ValueError(f"unknown concept {concept!r}")

    return WeightMatrix(symmetric_from_pairs(p, pairs, values), names)
