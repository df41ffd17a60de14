"""Binning of attribute pairs into joint/marginal probability tables."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

EQUAL_FREQUENCY = "equal-frequency"
EQUAL_WIDTH = "equal-width"
SCHEMES = (EQUAL_FREQUENCY, EQUAL_WIDTH)


class BinningError(ValueError):
    """Raised when a column cannot be split into at least two bins."""


@dataclass(frozen=True)
class BinningSpec:
    bins_per_axis: int = 8
    scheme: str = EQUAL_FREQUENCY
    smoothing_alpha: float = 0.0

    def __post_init__(self):
        if int(self.bins_per_axis) != self.bins_per_axis or self.bins_per_axis < 2:
            raise ValueError(f"bins_per_axis must be an integer >= 2, got {self.bins_per_axis}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown binning scheme {self.scheme!r}; use one of {SCHEMES}")
        if not self.smoothing_alpha >= 0:
            raise ValueError(f"smoothing_alpha must be >= 0, got {self.smoothing_alpha}")

    def with_alpha(self, alpha: float) -> BinningSpec:
        return BinningSpec(self.bins_per_axis, self.scheme, alpha)


@dataclass(frozen=True)
class ContingencyTable:
    """Joint cell probabilities of two binned attributes plus their marginals.

    ``counts`` keeps the raw (unsmoothed) cell counts; ``alpha`` is the
    additive smoothing that produced ``joint`` from them.
    """

    joint: np.ndarray
    row_marginal: np.ndarray
    col_marginal: np.ndarray
    n: int
    counts: np.ndarray | None = None
    alpha: float = 0.0

    @classmethod
    def from_joint(cls, joint, n: int = 1, counts=None, alpha: float = 0.0) -> ContingencyTable:
        joint = np.asarray(joint, dtype=float)
        if joint.ndim != 2:
            raise ValueError("joint must be a 2-D table")
        if np.any(joint < 0):
            raise ValueError("joint probabilities must be nonnegative")
        if abs(joint.sum() - 1.0) > 1e-12:
            raise ValueError(f"joint probabilities sum to {joint.sum()!r}, not 1")
        return cls(joint, joint.sum(axis=1), joint.sum(axis=0), int(n), counts, alpha)

    @classmethod
    def from_counts(cls, counts, alpha: float = 0.0) -> ContingencyTable:
        counts = np.asarray(counts, dtype=float)
        n = counts.sum()
        smoothed = (counts + alpha) / (n + alpha * counts.size)
        return cls.from_joint(smoothed, n=int(round(n)), counts=counts, alpha=alpha)

    @property
    def shape(self) -> tuple[int, int]:
        return self.joint.shape

    @property
    def independence(self) -> np.ndarray:
        """Outer product of the marginals (the table expected under independence)."""
        return np.outer(self.row_marginal, self.col_marginal)

    def transpose(self) -> ContingencyTable:
        counts = None if self.counts is None else self.counts.T
        return ContingencyTable(self.joint.T, self.col_marginal, self.row_marginal,
                                self.n, counts, self.alpha)


def bin_edges(column, spec: BinningSpec) -> np.ndarray:
    """Interior cut points splitting ``column`` into ``spec.bins_per_axis`` bins.

    Equal-frequency cuts sit at the j/B empirical quantiles (midpoint
    interpolation); equal-width cuts split [min, max] uniformly. Duplicate
    cuts, and cuts at or above the column maximum (which would leave an empty
    top bin), are dropped, so the effective number of bins may be smaller.
    """
    x = np.asarray(column, dtype=float)
    B = spec.bins_per_axis
    if spec.scheme == EQUAL_FREQUENCY:
        if x.size < B:
            raise BinningError(f"equal-frequency binning needs >= {B} values, got {x.size}")
        cuts = np.quantile(x, np.arange(1, B) / B, method="midpoint")
    else:
        lo, hi = x.min(), x.max()
        cuts = lo + (hi - lo) * np.arange(1, B) / B
    cuts = np.unique(cuts)
    cuts = cuts[cuts < x.max()]
    if cuts.size == 0:
        raise BinningError("column is constant; fewer than 2 bins remain")
    if cuts.size + 1 < B:
        logger.info("binning collapsed from %d to %d bins", B, cuts.size + 1)
    return cuts


def digitize(column, edges) -> np.ndarray:
    """Bin index of each value; values equal to a cut go to the lower bin."""
    return np.searchsorted(edges, np.asarray(column, dtype=float), side="left")


def contingency(x, y, spec: BinningSpec = BinningSpec(), x_edges=None, y_edges=None) -> ContingencyTable:
    """Cross-tabulate two columns into a smoothed probability table.

    Cell probabilities are ``(c_ij + alpha) / (n + alpha * I * J)``. Edges
    may be passed in precomputed to avoid re-binning a column per pair.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be vectors of equal length")
    if x.size < 2:
        raise ValueError("need at least 2 observations")
    if x_edges is None:
        x_edges = bin_edges(x, spec)
    if y_edges is None:
        y_edges = bin_edges(y, spec)
    I, J = len(x_edges) + 1, len(y_edges) + 1
    cells = digitize(x, x_edges) * J + digitize(y, y_edges)
    counts = np.bincount(cells, minlength=I * J).reshape(I, J)
    return ContingencyTable.from_counts(counts, spec.smoothing_alpha)
