# %% [markdown]
# The command line pipeline
# =========================
#
# `parcoord` chains the steps through files: a weight matrix, an ordering
# JSON that can be edited by hand, and the SVG drawn from it.

# %%
import json

import numpy as np

from parcoord.cli import run

from _common import out_path

rng = np.random.default_rng(3)
n = 300
g = np.repeat([0, 1], n // 2)
cols = {
    "alcohol": 10 + g + 0.8 * rng.normal(size=n),
    "density": 0.99 - 0.002 * g + 0.001 * rng.normal(size=n),
    "sugar": rng.gamma(2.0, 2.0, size=n),
    "acidity": 6 + 0.5 * rng.normal(size=n),
}
cols["residual"] = cols["sugar"] * 0.5 + rng.normal(size=n)
csv = out_path("toy.csv")
with open(csv, "w") as fh:
    fh.write(",".join(cols) + "\n")
    for r in range(n):
        fh.write(",".join(f"{cols[c][r]:.4f}" for c in cols) + "\n")

# %%
run(["gi-matrix", "--input", str(csv), "--statistic", "pearson", "--output", str(out_path("w.csv"))])
run(["order", "--input", str(csv), "--method", "exact", "--output", str(out_path("order.json"))])
print(json.loads(out_path("order.json").read_text())["sequence"])
run(["cluster", "--input", str(csv), "--k", "2", "--output", str(out_path("labels.csv"))])
run(["render", "--input", str(csv), "--ordering", str(out_path("order.json")),
     "--labels", str(out_path("labels.csv")), "--output", str(out_path("toy.svg"))])
run(["screen", "--input", str(csv), "--bins", "4", "--output", str(out_path("screen.csv"))])
print(out_path("screen.csv").read_text())
