"""Standalone SVG parallel-coordinates plots."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .dataset import Dataset
from .ordering import Ordering

# matplotlib's tab10
DEFAULT_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)
EDGE_VALUE_COLOR = "#0000cc"

MARGIN_LEFT = 60
MARGIN_RIGHT = 60
MARGIN_TOP = 40
MARGIN_BOTTOM = 60


@dataclass(frozen=True)
class RenderSpec:
    width: int = 1000
    height: int = 500
    alpha: float | None = None  # None: 0.1 above 1000 rows, else 0.5
    palette: tuple[str, ...] = DEFAULT_PALETTE
    label_merge: dict | None = None
    show_edge_values: bool = True
    decimals: int = 2

    def __post_init__(self):
        if self.alpha is not None and not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not self.palette:
            raise ValueError("palette must not be empty")
        if self.width <= MARGIN_LEFT + MARGIN_RIGHT or self.height <= MARGIN_TOP + MARGIN_BOTTOM:
            raise ValueError("plot is too small for its margins")

    def opacity(self, n: int) -> float:
        if self.alpha is not None:
            return self.alpha
        return 0.1 if n > 1000 else 0.5


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _tick(v: float) -> str:
    return f"{v:.4g}"


def _colors(d: Dataset, spec: RenderSpec, rows) -> list[str]:
    if d.labels is None:
        return [spec.palette[0]] * len(rows)
    merge = spec.label_merge or {}
    merged = [merge.get(int(lab), int(lab)) for lab in d.labels[rows]]
    groups = sorted(set(merged))
    if len(groups) > len(spec.palette):
        raise ValueError(f"palette has {len(spec.palette)} colors for {len(groups)} label groups")
    rank = {grp: i for i, grp in enumerate(groups)}
    return [spec.palette[rank[m]] for m in merged]


def render_svg(d: Dataset, o: Ordering, spec: RenderSpec = RenderSpec(), rows=None) -> str:
    """Parallel-coordinates plot of ``d`` with axes in the order ``o``.

    Each axis is min-max scaled over the whole dataset (constant columns sit
    mid-axis). ``rows`` optionally selects the observations to draw, which
    keeps large datasets light without changing the axis scales. With
    ``show_edge_values`` the GI between neighbouring axes is written in the
    gap between them.
    """
    seq = list(o.sequence)
    if any(not 0 <= s < d.p for s in seq):
        raise ValueError("ordering refers to attributes outside the dataset")
    rows = np.arange(d.n) if rows is None else np.asarray(rows, dtype=int).reshape(-1)
    if rows.size and (rows.min() < 0 or rows.max() >= d.n):
        raise ValueError("row selection out of range")
    q = len(seq)
    X = d.values[:, seq]
    lo, hi = X.min(0), X.max(0)
    span = hi - lo
    scaled = np.where(span > 0, (X[rows] - lo) / np.where(span > 0, span, 1.0), 0.5)

    top, bottom = MARGIN_TOP, spec.height - MARGIN_BOTTOM
    left, right = MARGIN_LEFT, spec.width - MARGIN_RIGHT
    xs = [0.5 * (left + right)] if q == 1 else list(np.linspace(left, right, q))
    ys = bottom - scaled * (bottom - top)
    colors = _colors(d, spec, rows)
    opacity = spec.opacity(len(rows))

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{spec.width}" '
        f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="white"/>',
        f'<g id="observations" fill="none" stroke-width="1" stroke-opacity="{opacity:g}">',
    ]
    for r in range(len(rows)):
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(xs, ys[r]))
        out.append(f'<polyline class="observation" points="{pts}" stroke="{colors[r]}"/>')
    out.append("</g>")

    out.append('<g id="axes" stroke="black" stroke-width="1.5" font-family="sans-serif" font-size="11">')
    for t, c in enumerate(seq):
        x = _fmt(xs[t])
        out.append(f'<line class="axis" x1="{x}" y1="{top}" x2="{x}" y2="{bottom}"/>')
        out.append(f'<text class="tick" x="{x}" y="{top - 6}" text-anchor="middle" stroke="none">'
                   f"{escape(_tick(hi[t]))}</text>")
        out.append(f'<text class="tick" x="{x}" y="{bottom + 14}" text-anchor="middle" stroke="none">'
                   f"{escape(_tick(lo[t]))}</text>")
        out.append(f'<text class="axis-label" x="{x}" y="{bottom + 32}" text-anchor="middle" '
                   f'stroke="none" font-weight="bold">{escape(d.attribute_names[c])}</text>')
    out.append("</g>")

    if spec.show_edge_values and q > 1:
        out.append(f'<g id="edge-values" font-family="sans-serif" font-size="11" '
                   f'fill={quoteattr(EDGE_VALUE_COLOR)}>')
        y = _fmt(0.5 * (top + bottom))
        for t, v in enumerate(o.edge_values):
            x = _fmt(0.5 * (xs[t] + xs[t + 1]))
            out.append(f'<text class="edge-value" x="{x}" y="{y}" text-anchor="middle">'
                       f"{v:.{spec.decimals}f}</text>")
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, d: Dataset, o: Ordering, spec: RenderSpec = RenderSpec(), rows=None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(d, o, spec, rows))
