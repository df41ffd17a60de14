"""Symmetric matrix of pairwise information values and its file formats."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WeightMatrix:
    """Pairwise weights ``w[i, j]`` between named attributes.

    Symmetric within 1e-12, zero diagonal, finite entries.
    """

    w: np.ndarray
    names: tuple[str, ...]

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("weight matrix must be square")
        if len(self.names) != w.shape[0]:
            raise ValueError(f"{len(self.names)} names for a {w.shape[0]}x{w.shape[0]} matrix")
        if not np.all(np.isfinite(w)):
            raise ValueError("weight matrix has non-finite entries")
        if np.any(np.diag(w) != 0):
            raise ValueError("weight matrix diagonal must be zero")
        if np.max(np.abs(w - w.T), initial=0.0) > 1e-12:
            raise ValueError("weight matrix is not symmetric")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "names", tuple(str(a) for a in self.names))

    @property
    def p(self) -> int:
        return self.w.shape[0]

    def __getitem__(self, ij):
        return self.w[ij]

    def to_json(self) -> str:
        return json.dumps({"names": list(self.names), "matrix": self.w.tolist()}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> WeightMatrix:
        obj = json.loads(text)
        return cls(np.array(obj["matrix"], dtype=float), tuple(obj["names"]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow([""] + list(self.names))
        for name, row in zip(self.names, self.w):
            out.writerow([name] + [repr(float(v)) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> WeightMatrix:
        rows = list(csv.reader(io.StringIO(text)))
        names = tuple(rows[0][1:])
        if [r[0] for r in rows[1:]] != list(names):
            raise ValueError("row names do not match the header")
        return cls(np.array([[float(v) for v in r[1:]] for r in rows[1:]]), names)

    def save(self, path) -> None:
        text = self.to_csv() if str(path).lower().endswith(".csv") else self.to_json()
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def symmetric_from_pairs(p: int, pairs, values) -> np.ndarray:
    """Assemble a zero-diagonal symmetric matrix from upper-triangle entries."""
    w = np.zeros((p, p))
    for (i, j), v in zip(pairs, values):
        w[i, j] = w[j, i] = v
    return w
