"""Tabular numeric data: loading, validation and per-column rescaling."""

from __future__ import annotations

import csv
import logging
import os
from dataclasses import dataclass, field

import numpy as np

logger = logging.getLogger(__name__)

MISSING_TOKENS = frozenset({"", "NA"})


class DataError(ValueError):
    """Raised when input data cannot be turned into a valid dataset."""


@dataclass(frozen=True)
class Dataset:
    """An n x p matrix of finite reals with column names and optional labels.

    ``labels`` holds cluster ids 0..k-1, one per row, every id used at least
    once. ``dropped_rows`` records how many incomplete rows were discarded
    when the data was read from disk.
    """

    values: np.ndarray
    attribute_names: tuple[str, ...]
    labels: np.ndarray | None = None
    dropped_rows: int = field(default=0, compare=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 2:
            raise DataError("values must be a 2-D matrix")
        n, p = values.shape
        if n < 2:
            raise DataError(f"need at least 2 complete rows, got {n}")
        if p < 2:
            raise DataError(f"need at least 2 numeric columns, got {p}")
        if not np.all(np.isfinite(values)):
            raise DataError("values contain NaN or infinite entries")
        names = tuple(str(a) for a in self.attribute_names)
        if len(names) != p:
            raise DataError(f"{len(names)} attribute names for {p} columns")
        if any(not a for a in names):
            raise DataError("attribute names must be nonempty")
        if len(set(names)) != p:
            dup = sorted({a for a in names if names.count(a) > 1})
            raise DataError(f"duplicate attribute names: {dup}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "attribute_names", names)
        if self.labels is not None:
            object.__setattr__(self, "labels", validate_labels(self.labels, n))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    @property
    def k(self) -> int:
        """Number of label classes (0 when unlabeled)."""
        return 0 if self.labels is None else int(self.labels.max()) + 1

    def column(self, key: int | str) -> np.ndarray:
        return self.values[:, self.index(key)]

    def index(self, key: int | str) -> int:
        if isinstance(key, str):
            try:
                return self.attribute_names.index(key)
            except ValueError:
                raise KeyError(f"unknown attribute {key!r}") from None
        if not 0 <= key < self.p:
            raise IndexError(f"attribute index {key} out of range for p={self.p}")
        return int(key)

    def with_values(self, values: np.ndarray) -> Dataset:
        return Dataset(values, self.attribute_names, self.labels, self.dropped_rows)

    def with_labels(self, labels) -> Dataset:
        return Dataset(self.values, self.attribute_names, labels, self.dropped_rows)


def validate_labels(labels, n: int) -> np.ndarray:
    """Check that ``labels`` is a length-n vector using every id in 0..k-1."""
    arr = np.asarray(labels)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise DataError(f"labels must be a vector of length {n}")
    if arr.dtype.kind == "f":
        if not np.all(np.isfinite(arr)) or np.any(arr != np.round(arr)):
            raise DataError("labels must be integers")
    elif arr.dtype.kind not in "iu":
        raise DataError("labels must be integers")
    arr = arr.astype(np.int64)
    if arr.min() < 0:
        raise DataError("labels must be nonnegative")
    counts = np.bincount(arr)
    if np.any(counts == 0):
        missing = np.flatnonzero(counts == 0).tolist()
        raise DataError(f"label classes {missing} are empty")
    arr.setflags(write=False)
    return arr


def factorize(tokens) -> np.ndarray:
    """Map arbitrary tokens to 0..k-1 in order of first appearance."""
    codes: dict = {}
    return np.array([codes.setdefault(t, len(codes)) for t in tokens], dtype=np.int64)


def _sniff_delimiter(header_line: str) -> str:
    if "," in header_line:
        return ","
    for cand in (";", "\t"):
        if cand in header_line:
            return cand
    return ","


def load_csv(path, label_column: str | None = None, delimiter: str | None = None) -> Dataset:
    """Read a headed numeric CSV file.

    Rows holding a missing token (empty cell or ``NA``) in any used column
    are dropped and the count is logged and stored on the result. When
    ``label_column`` is given, that column is removed from the values and
    factorized to cluster ids in first-appearance order.

    ``delimiter=None`` picks ``,`` unless the header only contains ``;`` or
    tabs (the UCI wine files are semicolon separated).
    """
    if not os.path.isfile(path):
        raise DataError(f"cannot read {path!s}: no such file")
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            first = fh.readline()
            fh.seek(0)
            delim = delimiter or _sniff_delimiter(first)
            rows = list(csv.reader(fh, delimiter=delim))
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"cannot read {path!s}: {exc}") from exc

    if not rows:
        raise DataError(f"{path!s} is empty")
    header = [h.strip() for h in rows[0]]
    if len(set(header)) != len(header):
        raise DataError(f"duplicate column names in header of {path!s}")
    if any(not h for h in header):
        raise DataError(f"empty column name in header of {path!s}")

    label_idx = None
    if label_column is not None:
        if label_column not in header:
            raise DataError(f"label column {label_column!r} not found in {path!s}")
        label_idx = header.index(label_column)
    value_idx = [c for c in range(len(header)) if c != label_idx]
    if len(value_idx) < 2:
        raise DataError(f"need at least 2 numeric columns, got {len(value_idx)}")

    data, label_tokens = [], []
    dropped = 0
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise DataError(f"{path!s}:{lineno}: expected {len(header)} fields, got {len(row)}")
        cells = [row[c].strip() for c in value_idx]
        label_tok = row[label_idx].strip() if label_idx is not None else None
        if any(c in MISSING_TOKENS for c in cells) or label_tok in MISSING_TOKENS:
            dropped += 1
            continue
        try:
            data.append([float(c) for c in cells])
        except ValueError as exc:
            raise DataError(f"{path!s}:{lineno}: non-numeric cell ({exc})") from None
        label_tokens.append(label_tok)

    if dropped:
        logger.warning("dropped %d incomplete row(s) from %s", dropped, path)
    if len(data) < 2:
        raise DataError(f"need at least 2 complete rows, got {len(data)}")

    values = np.array(data, dtype=float)
    if not np.all(np.isfinite(values)):
        raise DataError(f"{path!s} contains non-finite numbers")
    labels = factorize(label_tokens) if label_idx is not None else None
    names = [header[c] for c in value_idx]
    return Dataset(values, tuple(names), labels, dropped_rows=dropped)


def minmax_normalize(d: Dataset) -> Dataset:
    """Map every column affinely onto [0, 1]; constant columns become 0.5."""
    x = d.values
    lo, hi = x.min(axis=0), x.max(axis=0)
    span = hi - lo
    const = span == 0
    out = (x - lo) / np.where(const, 1.0, span)
    out[:, const] = 0.5
    return d.with_values(out)


def standardize(d: Dataset) -> Dataset:
    """Center each column and scale it to unit standard deviation.

    The standard deviation uses divisor n. Constant columns become zeros.
    """
    x = d.values
    centered = x - x.mean(axis=0)
    sd = np.sqrt(np.mean(centered**2, axis=0))
    const = sd == 0
    out = centered / np.where(const, 1.0, sd)
    out[:, const] = 0.0
    return d.with_values(out)


def read_labels_csv(path, n: int | None = None) -> np.ndarray:
    """Read a single-column label file (header line first)."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [r for r in csv.reader(fh) if r]
    except OSError as exc:
        raise DataError(f"cannot read {path!s}: {exc}") from exc
    if len(rows) < 2:
        raise DataError(f"{path!s} holds no labels")
    if any(len(r) != 1 for r in rows):
        raise DataError(f"{path!s} must have exactly one column")
    tokens = [r[0].strip() for r in rows[1:]]
    try:
        labels = np.array([int(t) for t in tokens], dtype=np.int64)
    except ValueError:
        labels = factorize(tokens)
    if n is not None and labels.shape[0] != n:
        raise DataError(f"{path!s} has {labels.shape[0]} labels for {n} rows")
    return labels


def write_labels_csv(labels, path, header: str = "label") -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([header])
        for lab in np.asarray(labels):
            w.writerow([int(lab)])
