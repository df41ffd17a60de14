"""Axis orderings that maximize the information between neighbouring axes.

Three solvers:

* :func:`exact_cycle` finds the maximum-weight Hamiltonian cycle through all
  attributes by Held-Karp dynamic programming; :func:`cut_cycle` then opens
  it at its weakest edge.
* :func:`greedy_order` starts from the strongest pair and repeatedly appends
  the unused attribute most informative about the last axis placed.
* :func:`greedy_fixed_start` does the same from a chosen first attribute and
  only ever asks for one row of weights at a time, so it costs O(q p) weight
  evaluations and never builds the full matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .weights import WeightMatrix

EXACT_LIMIT = 18
EXACT = "exact-cycle-cut"
GREEDY = "greedy"
GREEDY_FIXED_START = "greedy-fixed-start"


@dataclass(frozen=True)
class Ordering:
    sequence: tuple[int, ...]
    edge_values: tuple[float, ...]
    method: str
    total: float = field(default=None)

    def __post_init__(self):
        seq = tuple(int(s) for s in self.sequence)
        edges = tuple(float(v) for v in self.edge_values)
        if len(set(seq)) != len(seq) or not seq:
            raise ValueError("ordering indices must be distinct and nonempty")
        if len(edges) != len(seq) - 1:
            raise ValueError(f"{len(seq)} axes need {len(seq) - 1} edge values, got {len(edges)}")
        object.__setattr__(self, "sequence", seq)
        object.__setattr__(self, "edge_values", edges)
        object.__setattr__(self, "total", float(sum(edges)))

    @property
    def q(self) -> int:
        return len(self.sequence)

    @classmethod
    def from_sequence(cls, sequence, w: WeightMatrix | np.ndarray, method: str) -> Ordering:
        W = w.w if isinstance(w, WeightMatrix) else np.asarray(w)
        seq = [int(s) for s in sequence]
        return cls(tuple(seq), tuple(W[a, b] for a, b in zip(seq, seq[1:])), method)

    def names(self, names) -> list[str]:
        return [names[i] for i in self.sequence]

    def to_dict(self, names, statistic: str | None = None, concept: str | None = None) -> dict:
        return {
            "method": self.method,
            "statistic": statistic,
            "concept": concept,
            "sequence": self.names(names),
            "edge_values": list(self.edge_values),
            "total": self.total,
        }

    def to_json(self, names, statistic=None, concept=None) -> str:
        return json.dumps(self.to_dict(names, statistic, concept), indent=2)

    def to_text(self, names) -> str:
        """One-line comma separated axis order."""
        return ",".join(self.names(names))


def ordering_from_json(text: str, names) -> tuple[Ordering, dict]:
    """Rebuild an ordering from its JSON form, mapping names back to indices.

    Returns the ordering and the raw record (for the statistic/concept tags).
    """
    obj = json.loads(text)
    names = list(names)
    try:
        seq = [names.index(a) for a in obj["sequence"]]
    except ValueError as exc:
        raise ValueError(f"ordering refers to an unknown attribute: {exc}") from None
    edges = obj.get("edge_values")
    if edges is None or len(edges) != len(seq) - 1:
        edges = [0.0] * (len(seq) - 1)
    return Ordering(tuple(seq), tuple(edges), obj.get("method", "manual")), obj


def _as_array(w) -> np.ndarray:
    return w.w if isinstance(w, WeightMatrix) else np.asarray(w, dtype=float)


def cycle_weight(cycle, w) -> float:
    W = _as_array(w)
    c = list(cycle)
    return float(sum(W[a, b] for a, b in zip(c, c[1:] + c[:1])))


def _tolerance(W):
    return 1e-12 * max(1.0, float(np.abs(W).sum()))


def exact_cycle(w, exact_limit: int = EXACT_LIMIT) -> tuple[list[int], float]:
    """Maximum-weight Hamiltonian cycle through all p attributes.

    Returns the cycle as a list starting at 0 (the closing edge back to 0 is
    implied) and its weight. Among optimal cycles (within a relative 1e-12)
    the lexicographically smallest sequence is returned.

    The table ``best[S, v]`` holds the heaviest way to finish the tour from
    ``v`` having already visited ``S``, over subsets S of {1..p-1}; it has
    2**(p-1) * p entries, hence ``exact_limit``.
    """
    W = _as_array(w)
    p = W.shape[0]
    if p < 3:
        raise ValueError(f"a cycle needs at least 3 attributes, got {p}")
    if p > exact_limit:
        raise ValueError(f"p={p} exceeds the exact solver limit of {exact_limit}; "
                         "use the greedy method instead")
    r = p - 1  # vertices 1..p-1 map to bits 0..r-1
    full = (1 << r) - 1
    best = np.full((1 << r, p), -np.inf)
    best[full, 1:] = W[1:, 0]
    masks = np.arange(1 << r)
    popcount = np.array([bin(s).count("1") for s in range(1 << r)])
    for size in range(r - 1, -1, -1):
        layer = masks[popcount == size]
        acc = np.full((layer.size, p), -np.inf)
        for v in range(1, p):
            bit = 1 << (v - 1)
            free = layer[(layer & bit) == 0]
            if free.size == 0:
                continue
            rows = np.searchsorted(layer, free)
            cand = W[:, v][None, :] + best[free | bit, v][:, None]
            acc[rows] = np.maximum(acc[rows], cand)
        # ``last`` must be a member of S (or 0 when S is empty)
        member = ((layer[:, None] >> (np.arange(p)[None, :] - 1).clip(0)) & 1).astype(bool)
        member[:, 0] = layer == 0
        acc[~member] = -np.inf
        best[layer] = acc

    tol = _tolerance(W)
    cycle, S, last = [0], 0, 0
    for _ in range(r):
        target = best[S, last]
        for v in range(1, p):
            bit = 1 << (v - 1)
            if S & bit:
                continue
            if W[last, v] + best[S | bit, v] >= target - tol:
                cycle.append(v)
                S, last = S | bit, v
                break
    return cycle, cycle_weight(cycle, W)


def cut_cycle(cycle, w) -> Ordering:
    """Open a cycle into a path by deleting its lowest-weight edge.

    Ties go to the deletion giving the lexicographically smallest path; each
    path is read in whichever direction is lexicographically smaller.
    """
    W = _as_array(w)
    c = [int(v) for v in cycle]
    q = len(c)
    edges = [W[c[t], c[(t + 1) % q]] for t in range(q)]
    low = min(edges)
    tol = _tolerance(W)
    paths = []
    for t in range(q):
        if edges[t] <= low + tol:
            path = c[t + 1:] + c[:t + 1]
            paths.append(min(path, path[::-1]))
    return Ordering.from_sequence(min(paths), W, EXACT)


def exact_order(w, exact_limit: int = EXACT_LIMIT) -> Ordering:
    cycle, _ = exact_cycle(w, exact_limit)
    return cut_cycle(cycle, w)


def _argmax_first(values) -> int:
    # np.argmax already returns the first (lowest-index) maximum
    return int(np.argmax(values))


def greedy_order(w, q: int | None = None) -> Ordering:
    """Greedy path of ``q`` axes.

    The first two axes are the globally heaviest pair (lowest indices on
    ties). The pair is oriented so that the end with the heavier best
    extension is last; on a tie the higher index is last. Each further axis
    is the unused attribute with the largest weight to the current last
    axis, lowest index on ties.
    """
    W = _as_array(w)
    p = W.shape[0]
    q = p if q is None else int(q)
    if not 2 <= q <= p:
        raise ValueError(f"q must satisfy 2 <= q <= p={p}, got {q}")
    iu, ju = np.triu_indices(p, 1)
    top = _argmax_first(W[iu, ju])
    a, b = int(iu[top]), int(ju[top])  # a < b
    rest = np.ones(p, dtype=bool)
    rest[[a, b]] = False
    seq = [a, b]
    if rest.any():
        ext_a, ext_b = W[a, rest].max(), W[b, rest].max()
        if ext_a > ext_b:
            seq = [b, a]
    used = ~rest
    while len(seq) < q:
        row = np.where(used, -np.inf, W[seq[-1]])
        nxt = _argmax_first(row)
        seq.append(nxt)
        used[nxt] = True
    return Ordering.from_sequence(seq, W, GREEDY)


def matrix_oracle(w):
    """Row oracle backed by a precomputed matrix."""
    W = _as_array(w)

    def row(current, candidates):
        return W[current, np.asarray(candidates, dtype=int)]

    row.p = W.shape[0]
    return row


def greedy_fixed_start(row, start: int, q: int, p: int | None = None) -> Ordering:
    """Greedy path of ``q`` axes beginning at ``start``.

    ``row(current, candidates)`` must return the weights between attribute
    ``current`` and each of ``candidates``; it is called once per extension
    with only the unused attributes, so at most (q - 1) * (p - 1) weights
    are ever evaluated. ``p`` defaults to ``row.p`` when the oracle has one.
    """
    p = getattr(row, "p", None) if p is None else p
    if p is None:
        raise ValueError("number of attributes p is unknown")
    if not 0 <= start < p:
        raise ValueError(f"start index {start} out of range for p={p}")
    if not 1 <= q <= p:
        raise ValueError(f"q must satisfy 1 <= q <= p={p}, got {q}")
    seq = [int(start)]
    edges = []
    unused = np.ones(p, dtype=bool)
    unused[start] = False
    while len(seq) < q:
        cand = np.flatnonzero(unused)
        vals = np.asarray(row(seq[-1], cand), dtype=float)
        k = _argmax_first(vals)
        seq.append(int(cand[k]))
        edges.append(float(vals[k]))
        unused[cand[k]] = False
    return Ordering(tuple(seq), tuple(edges), GREEDY_FIXED_START)


def total_information(o: Ordering, w=None) -> float:
    """Sum of the neighbour weights of ``o``, rechecked against ``w`` if given."""
    if w is not None:
        W = _as_array(w)
        if max(o.sequence) >= W.shape[0]:
            raise ValueError("ordering refers to attributes outside the weight matrix")
        fresh = [W[a, b] for a, b in zip(o.sequence, o.sequence[1:])]
        if not np.allclose(fresh, o.edge_values, rtol=1e-12, atol=1e-12):
            raise ValueError("ordering edge values do not match the weight matrix")
    return o.total

