"""Path-energy ranking on the affinity graph.

Walks of every length are summed with geometric weight r**l:

    C = sum_{l>=1} r**l A**l = (I - rA)^-1 - I

and each feature is scored by the row sum of C. ``r`` is picked as
``damping / rho(A)`` so the series always converges.
"""
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import NoConvergence, SingularMatrix
from .graph import build_graph, graph_from_relevancy
from .plsa import EmConfig, fit
from .quantizer import DEFAULT_TOKENS, quantize_all

EPS = 1e-12
PIVOT_TOL = 1e-14
DEFAULT_DAMPING = 0.9
TIE_DECIMALS = 12
METHODS = ("lu", "rank1")


@dataclass(frozen=True)
class Ranking:
    order: np.ndarray  # feature indices, most relevant first
    scores: np.ndarray  # indexed by original feature position
    r: float
    spectral_radius: float
    params: dict = field(default_factory=dict)

    def to_dict(self, top=None):
        order = self.order.tolist()
        if top is not None:
            order = order[:top]
        return {
            "order": order,
            "scores": [float(s) for s in self.scores],
            "r": float(self.r),
            "spectral_radius": float(self.spectral_radius),
            "params": dict(self.params),
        }


def spectral_radius(a, tol=1e-12, max_iter=1000):
    """Power iteration estimate of rho(A) for a nonnegative matrix.

    Returns ``(rho, converged)``. While the iterate stays strictly positive
    the Collatz-Wielandt bounds min/max (Ax)_i/x_i bracket rho and the upper
    bound is returned once they agree to ``tol``; a ||Ax|| that stops
    changing is accepted too. A :class:`NoConvergence` warning is issued at
    the cap.
    """
    a = np.asarray(a, dtype=np.float64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if np.any(a < 0):
        raise ValueError("matrix must be nonnegative")
    if n == 0 or not np.any(a):
        return 0.0, True
    x = np.full(n, 1.0 / np.sqrt(n))
    prev = None
    est = 0.0
    for _ in range(max_iter):
        y = a @ x
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return 0.0, True
        est = norm
        if np.all(x > 0):
            ratios = y / x
            lo, hi = float(ratios.min()), float(ratios.max())
            if hi - lo <= tol * hi:
                return hi, True
        # tiny iterate entries make the ratios noisy; a settled norm also counts
        if prev is not None and abs(norm - prev) <= tol * norm:
            return norm, True
        prev = norm
        x = y / norm
    warnings.warn(f"power iteration did not converge in {max_iter} steps; "
                  f"best estimate {est!r}", NoConvergence, stacklevel=2)
    return est, False


def choose_r(rho, damping=DEFAULT_DAMPING):
    if not 0 < damping < 1:
        raise ValueError("damping must lie in (0, 1)")
    if rho < 0:
        raise ValueError("spectral radius must be >= 0")
    if rho <= EPS:
        return float(damping)
    return float(damping / rho)


def energy_matrix(a, r, pivot_tol=PIVOT_TOL):
    """(I - rA)^-1 - I by LU with partial pivoting.

    Evaluated as the solution X of (I - rA) X = rA, which is the same matrix
    without subtracting I from an explicit inverse.
    """
    a = np.asarray(a, dtype=np.float64)
    n = a.shape[0]
    ra = r * a
    lu, perm, bad = _kernels.lu_factor(np.eye(n) - ra, pivot_tol)
    if bad >= 0:
        raise SingularMatrix(f"pivot below {pivot_tol:g} at column {bad}; r={r!r} too close to 1/rho")
    return _kernels.lu_solve(lu, perm, ra)


def energy_matrix_rank1(v, r, pivot_tol=PIVOT_TOL):
    """Sherman-Morrison closed form for A = v v^T: r v v^T / (1 - r |v|^2)."""
    v = np.asarray(v, dtype=np.float64)
    denom = 1.0 - r * float(v @ v)
    if abs(denom) < pivot_tol:
        raise SingularMatrix(f"1 - r|v|^2 = {denom!r}")
    return (r / denom) * np.outer(v, v)


def scores(c_check):
    return np.asarray(c_check, dtype=np.float64).sum(axis=1)


def order_by_score(values):
    """Indices by decreasing score, ties by ascending index.

    Scores are compared after rounding to 12 decimals relative to the
    largest magnitude, so features whose scores differ only by rounding
    noise (e.g. duplicated columns) count as tied.
    """
    values = np.asarray(values, dtype=np.float64)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    key = np.round(values / scale, TIE_DECIMALS) if scale > 0 else np.zeros_like(values)
    return np.lexsort((np.arange(values.size), -key))


def rank_graph(graph, damping=DEFAULT_DAMPING, method="lu", params=None):
    """Score and order the features of an :class:`AffinityGraph`."""
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    rho, _ = spectral_radius(graph.a)
    r = choose_r(rho, damping)
    if method == "rank1":
        if graph.zero_diagonal:
            raise ValueError("rank-1 fast path needs the diagonal (graph is not v v^T)")
        c = energy_matrix_rank1(graph.relevancy, r)
    else:
        c = energy_matrix(graph.a, r)
    sc = scores(c)
    return Ranking(order=order_by_score(sc), scores=sc, r=r, spectral_radius=rho,
                   params=dict(params or {}))


def rank_relevancy(relevancy, damping=DEFAULT_DAMPING, method="lu"):
    return rank_graph(graph_from_relevancy(relevancy), damping, method)


@dataclass(frozen=True)
class PipelineResult:
    tokens: object
    model: object
    graph: object
    ranking: Ranking


def run_pipeline(data, n_tokens=DEFAULT_TOKENS, phi_mode="prose", em=None,
                 damping=DEFAULT_DAMPING, zero_diagonal=False, method="lu"):
    """Quantize, fit PLSA, build the graph and rank; keeps every stage."""
    em = em or EmConfig()
    params = {
        "bins": int(n_tokens),
        "phi_mode": phi_mode,
        "damping": float(damping),
        "em_max_iter": int(em.max_iterations),
        "em_tol": float(em.rel_tolerance),
        "smoothing": float(em.smoothing),
        "zero_diagonal": bool(zero_diagonal),
        "method": method,
    }
    tokens = quantize_all(data, n_tokens, phi_mode)
    model = fit(tokens.counts, em)
    graph = build_graph(model, zero_diagonal=zero_diagonal)
    ranking = rank_graph(graph, damping, method, params)
    return PipelineResult(tokens=tokens, model=model, graph=graph, ranking=ranking)


def rank(data, n_tokens=DEFAULT_TOKENS, phi_mode="prose", em=None,
         damping=DEFAULT_DAMPING, zero_diagonal=False, method="lu"):
    return run_pipeline(data, n_tokens, phi_mode, em, damping, zero_diagonal, method).ranking
