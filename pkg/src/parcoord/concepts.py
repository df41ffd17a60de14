"""Measuring concepts: which pair of measures (F, H) the GI compares.

* dependence: F is the binned joint distribution, H the product of its
  binned marginals.
* separation: F is a k-component Gaussian location mixture fitted from
  cluster labels, H a single Gaussian at the overall mean. Both share the
  pooled within-cluster diagonal covariance, so only the locations differ.
* correlation: squared Pearson correlation, the classic baseline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, DataError, factorize, standardize, validate_labels
from .divergence import get_statistic, gi_continuous_mc, gi_discrete, gi_matrix
from .histogram import BinningSpec, bin_edges, contingency
from .weights import WeightMatrix

DEFAULT_MC_SAMPLES = 4096
VARIANCE_FLOOR = 1e-9


def dependence_weights(d: Dataset, g="mutual-information", spec: BinningSpec = BinningSpec(),
                       workers: int | None = None, auto_smooth: bool = True) -> WeightMatrix:
    return gi_matrix(d, "dependence", g, spec, workers=workers, auto_smooth=auto_smooth)


# -- clustering ---------------------------------------------------------------

@dataclass(frozen=True)
class ClusteringResult:
    labels: np.ndarray
    centroids: np.ndarray
    inertia: float
    n_iter: int = 0


def _sq_dists(X, C):
    # (n, k) squared Euclidean distances, clipped against cancellation
    d2 = (X * X).sum(1)[:, None] - 2.0 * X @ C.T + (C * C).sum(1)[None, :]
    return np.maximum(d2, 0.0)


def _kmeans_pp(X, k, rng):
    n = X.shape[0]
    centers = [int(rng.integers(n))]
    closest = _sq_dists(X, X[centers]).ravel()
    for _ in range(1, k):
        total = closest.sum()
        if total > 0:
            idx = int(np.searchsorted(np.cumsum(closest), rng.random() * total, side="right"))
            idx = min(idx, n - 1)
        else:
            free = np.setdiff1d(np.arange(n), centers)
            idx = int(rng.choice(free))
        centers.append(idx)
        closest = np.minimum(closest, _sq_dists(X, X[[idx]]).ravel())
    return X[centers].copy()


def _repair_empty(X, labels, centroids, k):
    counts = np.bincount(labels, minlength=k)
    for c in np.flatnonzero(counts == 0):
        d2 = ((X - centroids[labels]) ** 2).sum(1)
        d2[counts[labels] <= 1] = -1.0
        far = int(np.argmax(d2))
        counts[labels[far]] -= 1
        labels[far] = c
        counts[c] = 1
        centroids[c] = X[far]
    return labels


def kmeans(d: Dataset | np.ndarray, k: int, seed: int = 0, max_iter: int = 300,
           standardize_first: bool = True) -> ClusteringResult:
    """Lloyd's algorithm from a k-means++ start.

    Columns are standardized first unless ``standardize_first`` is False;
    the returned centroids live in that standardized space. Iteration stops
    at an assignment fixed point or after ``max_iter`` rounds. A cluster that
    empties out takes over the point farthest from its current centroid.
    """
    if isinstance(d, Dataset):
        X = (standardize(d) if standardize_first else d).values
    else:
        X = np.asarray(d, dtype=float)
    X = np.array(X, dtype=float)
    n = X.shape[0]
    if not 2 <= k <= n:
        raise ValueError(f"k must satisfy 2 <= k <= n={n}, got {k}")
    rng = np.random.default_rng(seed)
    centroids = _kmeans_pp(X, k, rng)
    labels = None
    it = 0
    for it in range(1, max_iter + 1):
        new = np.argmin(_sq_dists(X, centroids), axis=1)
        new = _repair_empty(X, new, centroids, k)
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        for c in range(k):
            centroids[c] = X[labels == c].mean(axis=0)
    centroids = np.array([X[labels == c].mean(axis=0) for c in range(k)])
    inertia = float(((X - centroids[labels]) ** 2).sum())
    return ClusteringResult(labels.astype(np.int64), centroids, inertia, it)


# -- location mixtures for the separation concept ----------------------------

@dataclass(frozen=True)
class LocationMixture:
    """F = sum_c w_c N(mu_c, diag(var)), H = N(mu, diag(var)).

    Works in any dimension; the separation concept uses it on attribute
    pairs and on single attributes.
    """

    component_means: np.ndarray  # (k, dim)
    weights: np.ndarray  # (k,)
    shared_diag_cov: np.ndarray  # (dim,)
    global_mean: np.ndarray  # (dim,)

    @property
    def dim(self) -> int:
        return self.global_mean.shape[0]

    @property
    def offsets(self) -> np.ndarray:
        """Component locations in units of the shared standard deviation, relative to H."""
        return (self.component_means - self.global_mean) / np.sqrt(self.shared_diag_cov)

    def _log_gauss(self, z, mean):
        var = self.shared_diag_cov
        r = (np.asarray(z, dtype=float) - mean) ** 2 / var
        return -0.5 * (r.sum(-1) + np.log(2 * np.pi * var).sum())

    def f_density(self, z):
        comps = np.stack([self._log_gauss(z, mu) for mu in self.component_means])
        return np.exp(comps.T) @ self.weights

    def h_density(self, z):
        return np.exp(self._log_gauss(z, self.global_mean))

    def proposal_density(self, z):
        return 0.5 * (self.f_density(z) + self.h_density(z))

    def sample_h(self, rng, m):
        return self.global_mean + np.sqrt(self.shared_diag_cov) * rng.standard_normal((m, self.dim))

    def sample_proposal(self, rng, m):
        """Draw from the equal mixture of F and H."""
        centers = np.vstack([self.global_mean, self.component_means])
        cum = np.cumsum(np.concatenate([[0.5], 0.5 * self.weights]))
        comp = np.minimum(np.searchsorted(cum, rng.random(m) * cum[-1], side="right"), len(cum) - 1)
        return centers[comp] + np.sqrt(self.shared_diag_cov) * rng.standard_normal((m, self.dim))

    def gi(self, g, m: int = DEFAULT_MC_SAMPLES, seed=0, return_se: bool = False):
        """Separation GI of F against H, importance-sampled from (F + H)/2.

        Draws exactly what :meth:`sample_proposal` draws, but evaluates the
        density ratio in closed form: with offsets delta_c,
        dF/dH(s) = sum_c w_c exp(delta_c . s - |delta_c|^2 / 2).
        """
        g = get_statistic(g)
        rng = np.random.default_rng(seed)
        delta = self.offsets
        cum = np.cumsum(np.concatenate([[0.5], 0.5 * self.weights]))
        comp = np.minimum(np.searchsorted(cum, rng.random(m) * cum[-1], side="right"), len(cum) - 1)
        s = np.vstack([np.zeros(self.dim), delta])[comp] + rng.standard_normal((m, self.dim))
        with np.errstate(over="ignore"):
            u = np.exp(s @ delta.T - 0.5 * (delta**2).sum(1)) @ self.weights
            terms = g.centered(u) * (2.0 / (1.0 + u)) / float(g.gpp1)
        if not np.all(np.isfinite(terms)):
            raise ValueError("non-finite density ratio; clusters are separated by too many "
                             "within-cluster standard deviations")
        value = float(terms.mean())
        if return_se:
            return value, float(terms.std(ddof=1) / np.sqrt(m))
        return value

    def gi_generic(self, g, m: int = DEFAULT_MC_SAMPLES, seed=0, return_se: bool = False):
        """Same estimate through the density-based :func:`gi_continuous_mc`."""
        return gi_continuous_mc(self.f_density, self.h_density, self.sample_h, g, m, seed,
                                proposal=(self.proposal_density, self.sample_proposal),
                                return_se=return_se)


PairMixtureModel = LocationMixture


class SeparationStats:
    """Per-attribute cluster summaries from which any pair mixture is assembled.

    Labels are recoded in first-appearance order, so renaming cluster ids
    does not change any estimate.
    """

    def __init__(self, d: Dataset, labels=None):
        labels = d.labels if labels is None else labels
        if labels is None:
            raise DataError("the separation concept needs cluster labels")
        labels = validate_labels(factorize(validate_labels(labels, d.n)), d.n)
        X = d.values
        k = int(labels.max()) + 1
        onehot = np.zeros((d.n, k))
        onehot[np.arange(d.n), labels] = 1.0
        sizes = onehot.sum(0)
        self.names = d.attribute_names
        self.weights = sizes / d.n
        self.means = (onehot.T @ X) / sizes[:, None]  # (k, p)
        self.global_mean = X.mean(0)
        resid = X - self.means[labels]
        pooled = (resid**2).mean(0)
        span = X.max(0) - X.min(0)
        self.constant = span == 0
        self.var = np.maximum(pooled, VARIANCE_FLOOR * span**2)

    def model(self, *attrs) -> LocationMixture:
        idx = list(attrs)
        for a in idx:
            if self.constant[a]:
                raise DataError(f"attribute {self.names[a]!r} is constant; separation is undefined")
        return LocationMixture(self.means[:, idx], self.weights, self.var[idx], self.global_mean[idx])


def fit_pair_mixture(d: Dataset, i: int, j: int, labels=None) -> LocationMixture:
    """Mixture F (per-cluster means) and single component H for attributes i, j."""
    return SeparationStats(d, labels).model(i, j)


def _pair_seed(seed, i, j):
    return [int(seed), int(i), int(j)]


class SeparationOracle:
    """Lazy separation weights: ``oracle(current, candidates)`` gives one row.

    Each pair draws from its own stream seeded by (seed, min(i, j),
    max(i, j)), so a value never depends on evaluation order. ``evaluations``
    counts pairwise GI computations.
    """

    def __init__(self, d: Dataset, labels=None, g="mutual-information",
                 m: int = DEFAULT_MC_SAMPLES, seed: int = 0):
        self.stats = SeparationStats(d, labels)
        self.g = get_statistic(g)
        self.m = m
        self.seed = seed
        self.p = d.p
        self.evaluations = 0

    def pair(self, i: int, j: int) -> float:
        self.evaluations += 1
        i, j = min(i, j), max(i, j)
        return self.stats.model(i, j).gi(self.g, self.m, _pair_seed(self.seed, i, j))

    def univariate(self, i: int) -> float:
        return self.stats.model(i).gi(self.g, self.m, [int(self.seed), int(i)])

    def __call__(self, current: int, candidates) -> np.ndarray:
        return np.array([self.pair(current, int(c)) for c in candidates])


def separation_weights(d: Dataset, labels=None, g="mutual-information",
                       m: int = DEFAULT_MC_SAMPLES, seed: int = 0,
                       workers: int | None = None) -> WeightMatrix:
    oracle = SeparationOracle(d, labels, g, m, seed)
    if np.all(oracle.stats.weights == 1.0):
        # a single cluster: F and H coincide
        return WeightMatrix(np.zeros((d.p, d.p)), d.attribute_names)
    return gi_matrix(d, oracle.pair, oracle.g, workers=workers)


def univariate_separation(d: Dataset, labels=None, g="mutual-information",
                          m: int = DEFAULT_MC_SAMPLES, seed: int = 0) -> np.ndarray:
    """Separation GI of each attribute on its own (1-D mixture vs 1-D Gaussian)."""
    oracle = SeparationOracle(d, labels, g, m, seed)
    if np.all(oracle.stats.weights == 1.0):
        return np.zeros(d.p)
    return np.array([oracle.univariate(i) for i in range(d.p)])


# -- dependence as a lazy row oracle -------------------------------------------

class DependenceOracle:
    """Lazy dependence weights for the fixed-start greedy ordering."""

    def __init__(self, d: Dataset, g="mutual-information", spec: BinningSpec = BinningSpec()):
        self.values = d.values
        self.g = get_statistic(g)
        self.spec = spec
        self.p = d.p
        self._edges: dict[int, np.ndarray] = {}
        self.evaluations = 0

    def _edge(self, c):
        if c not in self._edges:
            self._edges[c] = bin_edges(self.values[:, c], self.spec)
        return self._edges[c]

    def pair(self, i: int, j: int) -> float:
        self.evaluations += 1
        t = contingency(self.values[:, i], self.values[:, j], self.spec, self._edge(i), self._edge(j))
        return gi_discrete(t, self.g)

    def __call__(self, current: int, candidates) -> np.ndarray:
        return np.array([self.pair(current, int(c)) for c in candidates])


# -- correlation baseline -----------------------------------------------------

def correlation_weights(d: Dataset) -> WeightMatrix:
    """Squared Pearson correlation between every pair of attributes."""
    X = d.values
    sd = X.std(axis=0)
    const = np.flatnonzero(sd == 0)
    if const.size:
        raise DataError(f"attribute {d.attribute_names[const[0]]!r} is constant; correlation undefined")
    Z = (X - X.mean(0)) / sd
    r = (Z.T @ Z) / d.n
    w = np.clip(r * r, 0.0, 1.0)
    w = 0.5 * (w + w.T)
    np.fill_diagonal(w, 0.0)
    return WeightMatrix(w, d.attribute_names)


def correlation_pair(d: Dataset, i: int, j: int) -> float:
    x, y = d.values[:, i], d.values[:, j]
    x, y = x - x.mean(), y - y.mean()
    r = (x @ y) / np.sqrt((x @ x) * (y @ y))
    return float(min(r * r, 1.0))

