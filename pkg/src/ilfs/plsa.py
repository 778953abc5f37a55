"""Two-topic PLSA over token/feature co-occurrence counts.

Topic 0 (z1) is anchored to *relevancy* by initializing P(t|z1) to increase
with the token index and P(t|z2) to decrease; no random restarts.
"""
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import DegenerateCounts


@dataclass(frozen=True)
class EmConfig:
    max_iterations: int = 100
    rel_tolerance: float = 1e-6
    smoothing: float = 0.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.rel_tolerance > 0:
            raise ValueError("rel_tolerance must be > 0")
        if self.smoothing < 0:
            raise ValueError("smoothing must be >= 0")


@dataclass(frozen=True)
class PlsaModel:
    p_z: np.ndarray  # (2,)
    p_f_given_z: np.ndarray  # (n, 2)
    p_t_given_z: np.ndarray  # (T, 2)
    p_z_given_f: np.ndarray  # (n, 2)
    log_likelihood_trace: tuple = ()
    iterations_run: int = 0
    converged: bool = False

    @property
    def relevancy(self):
        """P(z1 | f) for every feature."""
        return self.p_z_given_f[:, 0]

    def to_dict(self):
        return {
            "p_z": self.p_z.tolist(),
            "p_t_given_z": self.p_t_given_z.tolist(),
            "p_z_given_f": self.p_z_given_f.tolist(),
            "trace": list(self.log_likelihood_trace),
            "iterations": self.iterations_run,
            "converged": self.converged,
        }


def topic_posterior(p_f_given_z, p_z):
    """P(z|f) by Bayes from P(f|z) and P(z); all-zero rows become [0.5, 0.5]."""
    joint = p_f_given_z * p_z[None, :]
    denom = joint.sum(axis=1, keepdims=True)
    out = np.full_like(joint, 0.5)
    np.divide(joint, denom, out=out, where=np.broadcast_to(denom > 0, joint.shape))
    return out


def init_priors(n_features, n_tokens):
    if n_features < 1 or n_tokens < 2:
        raise ValueError("need n_features >= 1 and n_tokens >= 2")
    ramp = np.linspace(1.0, n_tokens, n_tokens)
    p_t_z = np.column_stack([ramp / ramp.sum(), ramp[::-1] / ramp.sum()])
    p_z = np.array([0.5, 0.5])
    p_f_z = np.full((n_features, 2), 1.0 / n_features)
    return PlsaModel(p_z=p_z, p_f_given_z=p_f_z, p_t_given_z=p_t_z,
                     p_z_given_f=topic_posterior(p_f_z, p_z))


def e_step(model, counts=None):
    """Responsibilities P(z|f,t), shape (n, T, 2).

    ``counts`` is accepted for symmetry with :func:`m_step`; the posterior
    does not depend on it.
    """
    return _kernels.e_step(np.asarray(model.p_z, dtype=np.float64),
                           np.asarray(model.p_f_given_z, dtype=np.float64),
                           np.asarray(model.p_t_given_z, dtype=np.float64))


def m_step(posteriors, counts):
    """Return updated (P(t|z), P(f|z), P(z))."""
    return _kernels.m_step(np.asarray(posteriors, dtype=np.float64),
                           np.asarray(counts, dtype=np.float64))


def log_likelihood(model, counts):
    return _kernels.log_likelihood(np.asarray(model.p_t_given_z, dtype=np.float64),
                                   np.asarray(model.p_z_given_f, dtype=np.float64),
                                   np.asarray(counts, dtype=np.float64))


def fit(counts, config=None, callback=None):
    """Fit the model by EM starting from :func:`init_priors`.

    The trace holds the log-likelihood of the initial parameters followed by
    one value per iteration. ``callback(iteration, model)`` runs after every
    iteration, mostly for tests that inspect intermediate states.
    """
    config = config or EmConfig()
    Q = np.array(counts, dtype=np.float64)
    if Q.ndim != 2:
        raise ValueError("counts must be a 2-D (features x tokens) table")
    if np.any(Q < 0) or not np.all(np.isfinite(Q)):
        raise ValueError("counts must be finite and nonnegative")
    Q = Q + config.smoothing
    if not np.any(Q > 0):
        raise DegenerateCounts("count table has no positive entry")

    n, T = Q.shape
    model = init_priors(n, T)
    ll = log_likelihood(model, Q)
    trace = [ll]
    converged = False
    it = 0
    while it < config.max_iterations:
        it += 1
        post = _kernels.e_step(model.p_z, model.p_f_given_z, model.p_t_given_z)
        p_t_z, p_f_z, p_z = _kernels.m_step(post, Q)
        model = PlsaModel(p_z=p_z, p_f_given_z=p_f_z, p_t_given_z=p_t_z,
                          p_z_given_f=topic_posterior(p_f_z, p_z))
        new_ll = log_likelihood(model, Q)
        trace.append(new_ll)
        if callback is not None:
            callback(it, model)
        change = abs(new_ll - ll)
        ll = new_ll
        if change < config.rel_tolerance * abs(ll) or change == 0.0:
            converged = True
            break
    return replace(model, log_likelihood_trace=tuple(trace), iterations_run=it,
                   converged=converged)
