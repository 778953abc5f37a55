"""Discriminative quantization: raw feature columns to relevancy tokens.

Each sample gets a Fisher-style score per class, normalized over classes.
The score at the sample's true class (its prior) is then binned into one
of ``n_tokens`` equal-width intervals on [0, 1]; token 1 means the sample
is poorly represented by the feature, token ``n_tokens`` well represented.

Two scoring modes exist:

``literal``
    score_k = (s - mu_k)^2 / (sum_j sigma_j^2 + eps)

``prose`` (default)
    score_k = sum_{j != k} (s - mu_j)^2 / (sum_j sigma_j^2 + eps)

Under ``literal`` a sample close to its own class mean scores *low* at its
own class; ``prose`` scores it high, which is what the downstream
relevancy prior (high tokens = relevant) expects.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .dataset import class_stats
from .errors import OutOfRange

EPS = 1e-12
RANGE_SLACK = 1e-12
PHI_MODES = ("prose", "literal")
DEFAULT_TOKENS = 6


@dataclass(frozen=True)
class PhiScores:
    phi: np.ndarray  # (m, K), rows sum to 1
    normalizer: np.ndarray  # (m,), per-sample Z; 0 where the uniform fallback applied


@dataclass(frozen=True)
class TokenizedFeatures:
    tokens: np.ndarray  # (n, m), values in 1..n_tokens
    counts: np.ndarray  # (n, n_tokens) float counts Q
    n_tokens: int


def _check_mode(mode):
    if mode not in PHI_MODES:
        raise ValueError(f"phi mode must be one of {PHI_MODES}, got {mode!r}")


def phi_scores(feature_column, mu, sigma_sq_sum, mode="prose"):
    """Class scores for every sample of one feature.

    ``mu`` holds the K class means of this feature and ``sigma_sq_sum`` the
    sum of its class variances.
    """
    _check_mode(mode)
    s = np.asarray(feature_column, dtype=np.float64)[:, None]
    mu = np.asarray(mu, dtype=np.float64)[None, :]
    raw = (s - mu) ** 2 / (float(sigma_sq_sum) + EPS)
    if mode == "prose":
        K = mu.shape[1]
        scores = np.stack([raw[:, [j for j in range(K) if j != k]].sum(axis=1)
                           for k in range(K)], axis=1)
    else:
        scores = raw
    z = scores.sum(axis=1)
    phi = np.full_like(scores, 1.0 / scores.shape[1])
    ok = z > 0
    phi[ok] = scores[ok] / z[ok, None]
    return PhiScores(phi=phi, normalizer=np.where(ok, z, 0.0))


def priors(phi, labels):
    """Score of each sample at its own class column (the diagonal of phi @ Y).

    ``labels`` are 1-based class indices.
    """
    phi = np.asarray(phi, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    return phi[np.arange(len(labels)), labels - 1]


def _clamp_unit(pi):
    pi = np.asarray(pi, dtype=np.float64)
    if np.any(pi < -RANGE_SLACK) or np.any(pi > 1 + RANGE_SLACK) or not np.all(np.isfinite(pi)):
        bad = pi[~((pi >= -RANGE_SLACK) & (pi <= 1 + RANGE_SLACK))]
        raise OutOfRange(f"prior values outside [0, 1]: {bad[:5].tolist()}")
    return np.clip(pi, 0.0, 1.0)


def tokenize(pi, n_tokens=DEFAULT_TOKENS):
    """Equal-width binning of [0, 1]; the top bin is closed at 1."""
    if n_tokens < 2:
        raise ValueError("n_tokens must be >= 2")
    pi = _clamp_unit(pi)
    idx = np.floor(pi * n_tokens).astype(np.int64)
    return np.minimum(idx, n_tokens - 1) + 1


def quantize_all(data, n_tokens=DEFAULT_TOKENS, mode="prose", stats=None):
    """Tokenize every feature of ``data``; see the module docstring."""
    _check_mode(mode)
    if n_tokens < 2:
        raise ValueError("n_tokens must be >= 2")
    if stats is None:
        stats = class_stats(data)
    denom = stats.sigma_sq_sum + EPS
    pi = _kernels.fisher_priors(data.values, data.labels - 1, stats.mu, denom, mode == "prose")
    pi = _clamp_unit(pi)
    tokens, counts = _kernels.tokenize_counts(pi, int(n_tokens))
    return TokenizedFeatures(tokens=tokens, counts=counts, n_tokens=int(n_tokens))
