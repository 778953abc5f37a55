"""Vectorized numpy kernels.

Same signatures as :mod:`ilfs._kernels.numba_impl`; selected when numba is
missing or ``ILFS_BACKEND=numpy``.
"""
import numpy as np


def fisher_priors(values, labels, mu, denom, prose):
    """Per-sample prior at the sample's own class, for every feature.

    values : (m, n) raw data
    labels : (m,) zero-based class index
    mu     : (K, n) class means
    denom  : (n,) sum of class variances plus epsilon
    """
    m, n = values.shape
    K = mu.shape[0]
    raw = np.empty((K, m, n))
    for k in range(K):
        raw[k] = (values - mu[k]) ** 2 / denom
    if prose:
        scores = np.zeros_like(raw)
        for k in range(K):
            for j in range(K):
                if j != k:
                    scores[k] += raw[j]
    else:
        scores = raw
    total = scores.sum(axis=0)
    own = scores[labels, np.arange(m)]
    out = np.full((m, n), 1.0 / K)
    ok = total > 0
    out[ok] = own[ok] / total[ok]
    return out


def tokenize_counts(pi, n_tokens):
    """Bin (m, n) priors into tokens 1..T; returns (n, m) tokens and (n, T) counts."""
    m, n = pi.shape
    idx = np.floor(pi.T * n_tokens).astype(np.int64)
    np.clip(idx, 0, n_tokens - 1, out=idx)
    flat = (np.arange(n)[:, None] * n_tokens + idx).ravel()
    counts = np.bincount(flat, minlength=n * n_tokens).reshape(n, n_tokens)
    return idx + 1, counts.astype(np.float64)


def e_step(p_z, p_f_z, p_t_z):
    joint = p_z[None, None, :] * p_f_z[:, None, :] * p_t_z[None, :, :]
    denom = joint.sum(axis=2, keepdims=True)
    post = np.full_like(joint, 0.5)
    ok = np.broadcast_to(denom > 0, joint.shape)
    np.divide(joint, denom, out=post, where=ok)
    return post


def m_step(post, counts):
    n, T = counts.shape
    w = counts[:, :, None] * post
    mass = w.sum(axis=(0, 1))
    p_t_z = np.full((T, 2), 1.0 / T)
    p_f_z = np.full((n, 2), 1.0 / n)
    for z in range(2):
        if mass[z] > 0:
            p_t_z[:, z] = w[:, :, z].sum(axis=0) / mass[z]
            p_f_z[:, z] = w[:, :, z].sum(axis=1) / mass[z]
    total = counts.sum()
    p_z = mass / total if total > 0 else np.full(2, 0.5)
    return p_t_z, p_f_z, p_z


def log_likelihood(p_t_z, p_z_f, counts):
    p_t_f = p_z_f @ p_t_z.T
    mask = counts > 0
    return float(np.sum(counts[mask] * np.log(np.maximum(p_t_f[mask], 1e-300))))


def lu_factor(a, pivot_tol):
    """In-place-style LU with partial pivoting on a copy of ``a``.

    Returns (lu, perm, bad) where ``bad`` is the failing column or -1.
    """
    lu = np.array(a, dtype=np.float64, copy=True)
    n = lu.shape[0]
    perm = np.arange(n)
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) < pivot_tol:
            return lu, perm, k
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm, -1


def lu_solve(lu, perm, b):
    x = np.array(b, dtype=np.float64)[perm]
    n = lu.shape[0]
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x
