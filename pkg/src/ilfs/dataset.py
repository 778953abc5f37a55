"""Tabular training data: CSV ingestion, validation and class statistics."""
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyDataset, MissingColumn, ParseError, SingleClass


def _frozen(arr, dtype):
    out = np.array(arr, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class FeatureMatrix:
    """m samples by n features plus class labels encoded as 1..K.

    ``classes`` keeps the original label spelling (index k-1 for label k) so
    that :func:`save_csv` can write the data back out unchanged.
    """

    values: np.ndarray
    labels: np.ndarray
    feature_names: tuple = None
    classes: tuple = None
    n_classes: int = field(init=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] == 0:
            raise EmptyDataset("no samples")
        m, n = values.shape
        if n < 1:
            raise EmptyDataset("no feature columns")
        if m < 2:
            raise EmptyDataset(f"need at least 2 samples, got {m}")
        if not np.all(np.isfinite(values)):
            raise ValueError("feature values must be finite")
        labels = np.asarray(self.labels)
        if labels.shape != (m,):
            raise ValueError(f"labels must have shape ({m},), got {labels.shape}")
        if not np.issubdtype(labels.dtype, np.integer):
            raise ValueError("labels must be integers 1..K; use encode_labels()")
        K = int(labels.max())
        if labels.min() < 1 or len(np.unique(labels)) != K:
            raise ValueError("labels must cover every class in 1..K")
        if K < 2:
            raise SingleClass("only one class present")

        names = self.feature_names
        if names is None:
            names = tuple(f"f{j}" for j in range(n))
        elif len(names) != n:
            raise ValueError("feature_names length does not match column count")
        classes = self.classes
        if classes is None:
            classes = tuple(str(k) for k in range(1, K + 1))
        elif len(classes) != K:
            raise ValueError("classes length does not match number of classes")

        object.__setattr__(self, "values", _frozen(values, np.float64))
        object.__setattr__(self, "labels", _frozen(labels, np.int64))
        object.__setattr__(self, "feature_names", tuple(str(s) for s in names))
        object.__setattr__(self, "classes", tuple(str(c) for c in classes))
        object.__setattr__(self, "n_classes", K)

    @property
    def n_samples(self):
        return self.values.shape[0]

    @property
    def n_features(self):
        return self.values.shape[1]

    def select(self, columns):
        """New matrix restricted to the given feature columns (in that order)."""
        columns = list(columns)
        return FeatureMatrix(
            self.values[:, columns],
            self.labels,
            tuple(self.feature_names[j] for j in columns),
            self.classes,
        )


@dataclass(frozen=True)
class ClassStats:
    mu: np.ndarray  # (K, n)
    sigma: np.ndarray  # (K, n), population std
    sigma_sq_sum: np.ndarray  # (n,)


def encode_labels(raw):
    """Map arbitrary labels to 1..K by order of first occurrence.

    >>> encode_labels(["a", "b", "a"])
    (array([1, 2, 1]), ('a', 'b'))
    """
    lookup = {}
    codes = []
    for item in raw:
        if item not in lookup:
            lookup[item] = len(lookup) + 1
        codes.append(lookup[item])
    return np.array(codes, dtype=np.int64), tuple(lookup)


def load_csv(path, label_column):
    with open(path, encoding="utf-8", newline="") as fh:
        lines = [ln.rstrip("\r\n") for ln in fh]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise EmptyDataset(f"{path}: file is empty")

    header = [h.strip() for h in lines[0].split(",")]
    if any('"' in h for h in header):
        raise ParseError(1, header[0], "quoted fields are not supported")
    if label_column not in header:
        raise MissingColumn(f"label column {label_column!r} not found in header")
    label_idx = header.index(label_column)
    feat_idx = [j for j in range(len(header)) if j != label_idx]

    rows = []
    raw_labels = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != len(header):
            col = header[len(cells)] if len(cells) < len(header) else "<extra>"
            raise ParseError(lineno, col, f"expected {len(header)} cells, found {len(cells)}")
        if any('"' in c for c in cells):
            col = next(header[j] for j, c in enumerate(cells) if '"' in c)
            raise ParseError(lineno, col, "quoted fields are not supported")
        row = []
        for j in feat_idx:
            try:
                v = float(cells[j])
            except ValueError:
                raise ParseError(lineno, header[j], f"not a number: {cells[j]!r}") from None
            if not np.isfinite(v):
                raise ParseError(lineno, header[j], f"non-finite value {cells[j]!r}")
            row.append(v)
        rows.append(row)
        raw_labels.append(cells[label_idx].strip())

    if not rows:
        raise EmptyDataset(f"{path}: no data rows")
    if not feat_idx:
        raise EmptyDataset(f"{path}: no feature columns")
    labels, classes = encode_labels(raw_labels)
    if len(classes) < 2:
        raise SingleClass(f"label column {label_column!r} has a single value {classes[0]!r}")
    values = np.array(rows, dtype=np.float64).reshape(len(rows), len(feat_idx))
    return FeatureMatrix(values, labels, tuple(header[j] for j in feat_idx), classes)


def save_csv(data, path, label_column="label"):
    """Write ``data`` in the format :func:`load_csv` reads.

    Floats use ``repr`` so a reload reproduces them bit for bit.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(list(data.feature_names) + [label_column]) + "\n")
        for row, lab in zip(data.values.tolist(), data.labels.tolist()):
            fh.write(",".join([repr(v) for v in row] + [data.classes[lab - 1]]) + "\n")


def class_stats(data):
    """Per-class means and population standard deviations.

    Moments are taken about the column minimum, which keeps constant
    columns exact (mean equal to the value, sigma exactly 0).
    """
    X = data.values
    shift = X.min(axis=0)
    Xs = X - shift
    K, n = data.n_classes, data.n_features
    mu = np.empty((K, n))
    sigma = np.empty((K, n))
    for k in range(K):
        rows = Xs[data.labels == k + 1]
        m_k = rows.mean(axis=0)
        mu[k] = m_k + shift
        sigma[k] = np.sqrt(np.mean((rows - m_k) ** 2, axis=0))
    return ClassStats(mu=mu, sigma=sigma, sigma_sq_sum=np.sum(sigma**2, axis=0))
