"""Command line entry point: ``parcoord {gi-matrix,order,render,cluster,screen}``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, fields

import numpy as np

from .asymptotics import reports_to_csv, screen_pairs
from .concepts import (DEFAULT_MC_SAMPLES, DependenceOracle, SeparationOracle, correlation_pair,
                       correlation_weights, dependence_weights, kmeans, separation_weights)
from .dataset import DataError, Dataset, load_csv, read_labels_csv, write_labels_csv
from .divergence import STATISTICS, NeymanZeroCell
from .histogram import SCHEMES, BinningError, BinningSpec
from .ordering import EXACT_LIMIT, exact_order, greedy_fixed_start, greedy_order, ordering_from_json
from .render import RenderSpec, render_svg

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
CONCEPTS = ("dependence", "separation", "correlation")
METHODS = ("exact", "greedy", "greedy-fast")

log = logging.getLogger("parcoord")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    subcommand: str
    input: str
    concept: str = "dependence"
    statistic: str = "mutual-information"
    method: str = "greedy"
    q: int | None = None
    bins: int = 8
    scheme: str = "equal-frequency"
    alpha: float = 0.0
    k: int | None = None
    seed: int = 0
    mc_samples: int = DEFAULT_MC_SAMPLES
    output: str | None = None
    labels: str | None = None
    label_column: str | None = None
    start: str | None = None
    max_iter: int = 300
    ordering: str | None = None
    width: int = 1000
    height: int = 500
    opacity: float | None = None
    merge: str | None = None
    no_edge_values: bool = False
    decimals: int = 2

    @classmethod
    def from_namespace(cls, ns) -> RunConfig:
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in vars(ns).items() if k in known})

    @property
    def binning(self) -> BinningSpec:
        return BinningSpec(self.bins, self.scheme, self.alpha)

    def validate(self, p: int | None = None) -> None:
        """Reject inconsistent flag combinations; ``p`` enables checks that need the data width."""
        if self.bins < 2:
            raise UsageError("--bins must be >= 2")
        if self.alpha < 0:
            raise UsageError("--alpha must be >= 0")
        if self.mc_samples < 1:
            raise UsageError("--mc-samples must be >= 1")
        if self.k is not None and self.k < 2:
            raise UsageError("--k must be >= 2")
        if self.subcommand == "screen" and self.alpha != 0:
            raise UsageError("--alpha must be 0 for screen: smoothing breaks the chi-square calibration")
        if self.concept == "separation" and self.subcommand in ("gi-matrix", "order"):
            if not (self.labels or self.label_column or self.k):
                raise UsageError("--concept separation needs --labels, --label-column or --k")
        if self.labels and self.k:
            raise UsageError("--labels and --k are mutually exclusive")
        if self.subcommand == "order":
            if self.method == "greedy-fast" and self.start is None and self.concept != "separation":
                raise UsageError("--method greedy-fast needs --start unless --concept separation")
            if self.start is not None and self.method != "greedy-fast":
                raise UsageError("--start only applies to --method greedy-fast")
            if p is not None:
                q = p if self.q is None else self.q
                if self.method == "exact" and q != p:
                    raise UsageError(f"--method exact orders all attributes: --q must equal p={p}, got {q}")
                if self.method == "exact" and p > EXACT_LIMIT:
                    raise UsageError(f"--method exact supports at most {EXACT_LIMIT} attributes "
                                     f"(got {p}); use --method greedy")
                if self.method == "exact" and p < 3:
                    raise UsageError("--method exact needs at least 3 attributes")
                lo = 1 if self.method == "greedy-fast" else 2
                if not lo <= q <= p:
                    raise UsageError(f"--q must lie in [{lo}, {p}], got {q}")


def _add_data_flags(sp, computing=True):
    sp.add_argument("--input", required=True, help="CSV file with a header row")
    sp.add_argument("--label-column", help="column holding cluster labels")
    sp.add_argument("--output", help="output file (default: stdout)")
    if computing:
        sp.add_argument("--bins", type=int, default=8, help="bins per axis (default 8)")
        sp.add_argument("--scheme", choices=SCHEMES, default="equal-frequency")
        sp.add_argument("--alpha", type=float, default=0.0, help="additive cell smoothing")
        sp.add_argument("--statistic", choices=sorted(STATISTICS), default="mutual-information")


def _add_concept_flags(sp):
    sp.add_argument("--concept", choices=CONCEPTS, default="dependence")
    sp.add_argument("--labels", help="single-column label CSV aligned to the data rows")
    sp.add_argument("--k", type=int, help="cluster into k groups for the separation concept")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mc-samples", type=int, default=DEFAULT_MC_SAMPLES)
    sp.add_argument("--max-iter", type=int, default=300)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parcoord", description="Order parallel-coordinates axes by pairwise information.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    sp = sub.add_parser("gi-matrix", help="pairwise weight matrix (JSON, or CSV by extension)")
    _add_data_flags(sp)
    _add_concept_flags(sp)

    sp = sub.add_parser("order", help="compute an axis ordering")
    _add_data_flags(sp)
    _add_concept_flags(sp)
    sp.add_argument("--method", choices=METHODS, default="greedy")
    sp.add_argument("--q", type=int, help="number of axes (default: all)")
    sp.add_argument("--start", help="first attribute for greedy-fast (name or index)")

    sp = sub.add_parser("render", help="draw an ordering as SVG")
    _add_data_flags(sp, computing=False)
    sp.add_argument("--ordering", required=True, help="ordering JSON written by `order`")
    sp.add_argument("--labels", help="label CSV for coloring")
    sp.add_argument("--k", type=int, help="cluster into k groups for coloring")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-iter", type=int, default=300)
    sp.add_argument("--width", type=int, default=1000)
    sp.add_argument("--height", type=int, default=500)
    sp.add_argument("--opacity", type=float, help="polyline opacity (default by row count)")
    sp.add_argument("--merge", help="label regrouping, e.g. '4:0,5:1,6:1'")
    sp.add_argument("--no-edge-values", action="store_true")
    sp.add_argument("--decimals", type=int, default=2)

    sp = sub.add_parser("cluster", help="k-means labels as a single-column CSV")
    _add_data_flags(sp, computing=False)
    sp.add_argument("--k", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-iter", type=int, default=300)

    sp = sub.add_parser("screen", help="chi-square independence screen of every pair")
    _add_data_flags(sp)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load(cfg: RunConfig) -> Dataset:
    d = load_csv(cfg.input, label_column=cfg.label_column)
    if d.dropped_rows:
        print(f"dropped {d.dropped_rows} incomplete row(s)", file=sys.stderr)
    return d


def _labels(cfg: RunConfig, d: Dataset):
    if cfg.labels:
        return read_labels_csv(cfg.labels, d.n)
    if cfg.k:
        return kmeans(d, cfg.k, seed=cfg.seed, max_iter=cfg.max_iter).labels
    return d.labels


def _parse_merge(text: str | None) -> dict | None:
    if not text:
        return None
    try:
        return {int(a): int(b) for a, b in (item.split(":") for item in text.split(","))}
    except ValueError:
        raise UsageError(f"--merge expects 'old:new,...' integer pairs, got {text!r}") from None


def _weights(cfg: RunConfig, d: Dataset, labels):
    if cfg.concept == "dependence":
        return dependence_weights(d, cfg.statistic, cfg.binning)
    if cfg.concept == "separation":
        return separation_weights(d, labels, cfg.statistic, cfg.mc_samples, cfg.seed)
    return correlation_weights(d)


def _resolve_start(cfg: RunConfig, d: Dataset) -> int:
    try:
        return int(cfg.start) if cfg.start.isdigit() else d.index(cfg.start)
    except (KeyError, IndexError) as exc:
        raise UsageError(f"--start: {exc}") from None


def cmd_gi_matrix(cfg: RunConfig) -> int:
    d = _load(cfg)
    cfg.validate(d.p)
    w = _weights(cfg, d, _labels(cfg, d))
    text = w.to_csv() if cfg.output and cfg.output.lower().endswith(".csv") else w.to_json() + "\n"
    _emit(text, cfg.output)
    return EXIT_OK


def cmd_order(cfg: RunConfig) -> int:
    d = _load(cfg)
    cfg.validate(d.p)
    labels = _labels(cfg, d)
    q = d.p if cfg.q is None else cfg.q
    if cfg.method == "greedy-fast":
        if cfg.concept == "separation":
            oracle = SeparationOracle(d, labels, cfg.statistic, cfg.mc_samples, cfg.seed)
            if cfg.start is None:
                start = int(np.argmax([oracle.univariate(i) for i in range(d.p)]))
            else:
                start = _resolve_start(cfg, d)
        elif cfg.concept == "dependence":
            oracle = DependenceOracle(d, cfg.statistic, cfg.binning)
            start = _resolve_start(cfg, d)
        else:
            def oracle(c, cand):
                return np.array([correlation_pair(d, c, int(j)) for j in cand])
            start = _resolve_start(cfg, d)
        o = greedy_fixed_start(oracle, start, q, d.p)
    else:
        w = _weights(cfg, d, labels)
        o = exact_order(w) if cfg.method == "exact" else greedy_order(w, q)
    statistic = None if cfg.concept == "correlation" else cfg.statistic
    if cfg.output:
        _emit(o.to_json(d.attribute_names, statistic, cfg.concept) + "\n", cfg.output)
    print(o.to_text(d.attribute_names))
    print(f"total {o.total!r}")
    return EXIT_OK


def cmd_render(cfg: RunConfig) -> int:
    d = _load(cfg)
    cfg.validate(d.p)
    labels = _labels(cfg, d)
    if labels is not None:
        d = d.with_labels(labels)
    with open(cfg.ordering, encoding="utf-8") as fh:
        o, _ = ordering_from_json(fh.read(), d.attribute_names)
    spec = RenderSpec(cfg.width, cfg.height, cfg.opacity, label_merge=_parse_merge(cfg.merge),
                      show_edge_values=not cfg.no_edge_values, decimals=cfg.decimals)
    _emit(render_svg(d, o, spec), cfg.output)
    return EXIT_OK


def cmd_cluster(cfg: RunConfig) -> int:
    d = _load(cfg)
    cfg.validate(d.p)
    res = kmeans(d, cfg.k, seed=cfg.seed, max_iter=cfg.max_iter)
    if cfg.output:
        write_labels_csv(res.labels, cfg.output)
    else:
        sys.stdout.write("label\n" + "".join(f"{int(v)}\n" for v in res.labels))
    return EXIT_OK


def cmd_screen(cfg: RunConfig) -> int:
    d = _load(cfg)
    cfg.validate(d.p)
    reports = screen_pairs(d, cfg.statistic, cfg.binning)
    _emit(reports_to_csv(reports, d.attribute_names), cfg.output)
    return EXIT_OK


COMMANDS = {
    "gi-matrix": cmd_gi_matrix,
    "order": cmd_order,
    "render": cmd_render,
    "cluster": cmd_cluster,
    "screen": cmd_screen,
}


def run(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        cfg = RunConfig.from_namespace(ns)
        cfg.validate()
        return COMMANDS[cfg.subcommand](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NeymanZeroCell as exc:
        print(f"data error: NeymanZeroCell: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DataError, BinningError, ValueError, OSError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
