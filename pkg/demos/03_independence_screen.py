# %% [markdown]
# Screening pairs for independence
# ================================
#
# On an unsmoothed table, 2 n GI is close to chi-square with (I-1)(J-1)
# degrees of freedom under independence, whichever statistic is used.

# %%
import numpy as np

from parcoord import BinningSpec, Dataset, chi2_cdf, contingency, gi_discrete, screen_pairs
from parcoord.asymptotics import chi2_quantile

rng = np.random.default_rng(2)
spec = BinningSpec(4)
draws = np.array([
    [2 * 2000 * gi_discrete(contingency(*rng.uniform(size=(2, 2000)), spec), s)
     for s in ("mutual-information", "pearson", "freeman-tukey")]
    for _ in range(300)
])
print("mean of 2nGI (dof 9):", draws.mean(0).round(2))
print("95th percentile     :", np.quantile(draws, 0.95, axis=0).round(2), "vs", round(chi2_quantile(0.95, 9), 2))
print("P(chi2_9 <= 16.92)  :", round(chi2_cdf(16.92, 9), 4))

# %% [markdown]
# The screen reports every pair with its p-value.

# %%
n = 500
x = rng.normal(size=n)
X = np.column_stack([x, np.sin(2 * x) + 0.3 * rng.normal(size=n), rng.normal(size=n)])
for r in screen_pairs(Dataset(X, ("x", "sin2x", "noise")), "pearson", spec):
    print(r.pair, f"stat {r.test_statistic:8.2f}  dof {r.dof}  p {r.p_value:.3g}")
