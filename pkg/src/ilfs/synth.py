"""Seeded synthetic two-class data and a nearest-centroid evaluator.

Random numbers come from numpy's ``Philox`` bit generator (Philox4x64-10,
counter based) wrapped in ``numpy.random.Generator``. For a given seed the
draw order is fixed:

1. ``standard_normal((m, n_informative))`` added to class means -sep/2, +sep/2
2. ``standard_normal((m, n_noise))``
3. ``permutation(n_informative + n_noise)`` to shuffle the columns

Rows are ordered class 1 first, then class 2 (class 1 gets the extra row
when m is odd). With a test split, train rows come first, then test rows,
each block ordered the same way.
"""
from dataclasses import dataclass

import numpy as np

from .dataset import FeatureMatrix, class_stats
from .errors import EmptySelection, InvalidSpec


@dataclass(frozen=True)
class SynthSpec:
    n_samples: int = 200
    n_informative: int = 5
    n_noise: int = 45
    separation: float = 3.0
    seed: int = 0

    def __post_init__(self):
        if self.n_samples < 2:
            raise InvalidSpec("n_samples must be >= 2")
        if self.n_informative < 1:
            raise InvalidSpec("n_informative must be >= 1")
        if self.n_noise < 0:
            raise InvalidSpec("n_noise must be >= 0")
        if not self.separation > 0:
            raise InvalidSpec("separation must be > 0")
        if not 0 <= self.seed < 2**64:
            raise InvalidSpec("seed must fit in 64 unsigned bits")

    @property
    def n_features(self):
        return self.n_informative + self.n_noise


@dataclass(frozen=True)
class SyntheticData:
    train: FeatureMatrix
    informative: tuple  # column indices of the class-separated features
    test: FeatureMatrix = None


def _balanced_labels(m):
    first = (m + 1) // 2
    return np.concatenate([np.ones(first, dtype=np.int64), np.full(m - first, 2, dtype=np.int64)])


def generate_split(spec, n_test=0):
    """Train set of ``spec.n_samples`` rows plus an optional test set from the same draw."""
    if n_test == 1 or n_test < 0:
        raise InvalidSpec("n_test must be 0 or >= 2")
    labels = [_balanced_labels(spec.n_samples)]
    if n_test:
        labels.append(_balanced_labels(n_test))
    y = np.concatenate(labels)
    m = y.size

    rng = np.random.Generator(np.random.Philox(spec.seed))
    shift = np.where(y == 1, -spec.separation / 2, spec.separation / 2)
    informative = shift[:, None] + rng.standard_normal((m, spec.n_informative))
    noise = rng.standard_normal((m, spec.n_noise))
    perm = rng.permutation(spec.n_features)

    X = np.hstack([informative, noise])[:, perm]
    truth = tuple(int(j) for j in np.flatnonzero(perm < spec.n_informative))
    names = tuple(f"f{j}" for j in range(spec.n_features))
    train = FeatureMatrix(X[:spec.n_samples], y[:spec.n_samples], names, ("1", "2"))
    test = FeatureMatrix(X[spec.n_samples:], y[spec.n_samples:], names, ("1", "2")) if n_test else None
    return SyntheticData(train=train, informative=truth, test=test)


def generate(spec):
    return generate_split(spec).train


def fisher_ratio(data):
    """Between-class over within-class scatter, per feature."""
    st = class_stats(data)
    counts = np.bincount(data.labels, minlength=data.n_classes + 1)[1:].astype(float)
    grand = data.values.mean(axis=0)
    between = (counts[:, None] * (st.mu - grand) ** 2).sum(axis=0)
    within = (counts[:, None] * st.sigma**2).sum(axis=0)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(within > 0, between / np.where(within > 0, within, 1.0), np.inf)


def nearest_centroid_accuracy(train, test, selected):
    selected = sorted(int(j) for j in selected)
    if not selected:
        raise EmptySelection("no features selected")
    if train.n_features != test.n_features:
        raise ValueError("train and test have different feature counts")
    if selected[0] < 0 or selected[-1] >= train.n_features:
        raise IndexError("selected feature index out of range")
    Xtr = train.values[:, selected]
    Xte = test.values[:, selected]
    K = train.n_classes
    centroids = np.stack([Xtr[train.labels == k + 1].mean(axis=0) for k in range(K)])
    d2 = ((Xte[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    pred = np.argmin(d2, axis=1) + 1
    return float(np.mean(pred == test.labels))
