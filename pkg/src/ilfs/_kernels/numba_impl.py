"""Loop kernels compiled with numba.

Mirrors :mod:`ilfs._kernels.numpy_impl` one function at a time. Importing
this module fails when numba is absent; the dispatcher then falls back.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _fisher_priors(values, labels, mu, denom, prose):
    m, n = values.shape
    K = mu.shape[0]
    out = np.empty((m, n))
    raw = np.empty(K)
    for j in range(n):
        for s in range(m):
            x = values[s, j]
            for k in range(K):
                d = x - mu[k, j]
                raw[k] = d * d / denom[j]
            own = 0.0
            total = 0.0
            for k in range(K):
                if prose:
                    sc = 0.0
                    for i in range(K):
                        if i != k:
                            sc += raw[i]
                else:
                    sc = raw[k]
                total += sc
                if k == labels[s]:
                    own = sc
            out[s, j] = own / total if total > 0 else 1.0 / K
    return out


def fisher_priors(values, labels, mu, denom, prose):
    return _fisher_priors(
        np.ascontiguousarray(values, dtype=np.float64),
        np.ascontiguousarray(labels, dtype=np.int64),
        np.ascontiguousarray(mu, dtype=np.float64),
        np.ascontiguousarray(denom, dtype=np.float64),
        bool(prose),
    )


@njit(cache=True)
def _tokenize_counts(pi, n_tokens):
    m, n = pi.shape
    tokens = np.empty((n, m), dtype=np.int64)
    counts = np.zeros((n, n_tokens))
    for j in range(n):
        for s in range(m):
            t = int(np.floor(pi[s, j] * n_tokens))
            if t < 0:
                t = 0
            elif t > n_tokens - 1:
                t = n_tokens - 1
            tokens[j, s] = t + 1
            counts[j, t] += 1.0
    return tokens, counts


def tokenize_counts(pi, n_tokens):
    return _tokenize_counts(np.ascontiguousarray(pi, dtype=np.float64), int(n_tokens))


@njit(cache=True)
def e_step(p_z, p_f_z, p_t_z):
    n = p_f_z.shape[0]
    T = p_t_z.shape[0]
    post = np.empty((n, T, 2))
    for f in range(n):
        for t in range(T):
            a = p_z[0] * p_f_z[f, 0] * p_t_z[t, 0]
            b = p_z[1] * p_f_z[f, 1] * p_t_z[t, 1]
            d = a + b
            if d > 0:
                post[f, t, 0] = a / d
                post[f, t, 1] = b / d
            else:
                post[f, t, 0] = 0.5
                post[f, t, 1] = 0.5
    return post


@njit(cache=True)
def m_step(post, counts):
    n, T = counts.shape
    p_t_z = np.zeros((T, 2))
    p_f_z = np.zeros((n, 2))
    mass = np.zeros(2)
    total = 0.0
    for f in range(n):
        for t in range(T):
            q = counts[f, t]
            total += q
            for z in range(2):
                w = q * post[f, t, z]
                p_t_z[t, z] += w
                p_f_z[f, z] += w
                mass[z] += w
    for z in range(2):
        if mass[z] > 0:
            for t in range(T):
                p_t_z[t, z] /= mass[z]
            for f in range(n):
                p_f_z[f, z] /= mass[z]
        else:
            for t in range(T):
                p_t_z[t, z] = 1.0 / T
            for f in range(n):
                p_f_z[f, z] = 1.0 / n
    p_z = np.empty(2)
    for z in range(2):
        p_z[z] = mass[z] / total if total > 0 else 0.5
    return p_t_z, p_f_z, p_z


@njit(cache=True)
def _log_likelihood(p_t_z, p_z_f, counts):
    n, T = counts.shape
    acc = 0.0
    for f in range(n):
        for t in range(T):
            q = counts[f, t]
            if q > 0:
                p = p_t_z[t, 0] * p_z_f[f, 0] + p_t_z[t, 1] * p_z_f[f, 1]
                if p < 1e-300:
                    p = 1e-300
                acc += q * np.log(p)
    return acc


def log_likelihood(p_t_z, p_z_f, counts):
    return float(_log_likelihood(p_t_z, p_z_f, counts))


@njit(cache=True)
def _lu_factor(a, pivot_tol):
    lu = a.copy()
    n = lu.shape[0]
    perm = np.arange(n)
    for k in range(n):
        p = k
        best = abs(lu[k, k])
        for i in range(k + 1, n):
            v = abs(lu[i, k])
            if v > best:
                best = v
                p = i
        if best < pivot_tol:
            return lu, perm, k
        if p != k:
            for j in range(n):
                tmp = lu[k, j]
                lu[k, j] = lu[p, j]
                lu[p, j] = tmp
            tmp_i = perm[k]
            perm[k] = perm[p]
            perm[p] = tmp_i
        piv = lu[k, k]
        for i in range(k + 1, n):
            lu[i, k] /= piv
            l_ik = lu[i, k]
            if l_ik != 0.0:
                for j in range(k + 1, n):
                    lu[i, j] -= l_ik * lu[k, j]
    return lu, perm, -1


def lu_factor(a, pivot_tol):
    lu, perm, bad = _lu_factor(np.ascontiguousarray(a, dtype=np.float64), float(pivot_tol))
    return lu, perm, int(bad)


@njit(cache=True)
def _lu_solve(lu, perm, b):
    n, k = b.shape
    x = np.empty((n, k))
    for i in range(n):
        for c in range(k):
            x[i, c] = b[perm[i], c]
    for i in range(1, n):
        for j in range(i):
            l_ij = lu[i, j]
            if l_ij != 0.0:
                for c in range(k):
                    x[i, c] -= l_ij * x[j, c]
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            u_ij = lu[i, j]
            if u_ij != 0.0:
                for c in range(k):
                    x[i, c] -= u_ij * x[j, c]
        d = lu[i, i]
        for c in range(k):
            x[i, c] /= d
    return x


def lu_solve(lu, perm, b):
    b = np.asarray(b, dtype=np.float64)
    vec = b.ndim == 1
    x = _lu_solve(lu, perm, np.ascontiguousarray(b.reshape(b.shape[0], -1)))
    return x[:, 0] if vec else x
