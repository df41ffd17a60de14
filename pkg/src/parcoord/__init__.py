"""Order the axes of a parallel-coordinates plot by pairwise information."""

from .asymptotics import ScreeningReport, chi2_cdf, chi2_sf, independence_pvalue, screen_pairs
from .concepts import (ClusteringResult, LocationMixture, PairMixtureModel, SeparationOracle,
                       correlation_weights, dependence_weights, fit_pair_mixture, kmeans,
                       separation_weights, univariate_separation)
from .dataset import DataError, Dataset, load_csv, minmax_normalize, standardize
from .divergence import (STATISTICS, GStatistic, NeymanZeroCell, get_statistic, gi_continuous_mc,
                         gi_discrete, gi_matrix)
from .histogram import BinningError, BinningSpec, ContingencyTable, bin_edges, contingency
from .ordering import (Ordering, cut_cycle, exact_cycle, exact_order, greedy_fixed_start,
                       greedy_order, matrix_oracle, total_information)
from .render import RenderSpec, render_svg
from .weights import WeightMatrix

__version__ = "0.1.0"
