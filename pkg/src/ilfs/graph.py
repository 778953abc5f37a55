"""Fully connected feature graph weighted by joint relevancy."""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AffinityGraph:
    a: np.ndarray  # (n, n), a[i, j] = relevancy[i] * relevancy[j]
    relevancy: np.ndarray  # (n,)
    zero_diagonal: bool = False


def graph_from_relevancy(relevancy, zero_diagonal=False):
    v = np.asarray(relevancy, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError("relevancy must be a vector")
    if np.any(v < 0) or np.any(v > 1):
        raise ValueError("relevancy values must lie in [0, 1]")
    a = np.outer(v, v)
    if zero_diagonal:
        np.fill_diagonal(a, 0.0)
    return AffinityGraph(a=a, relevancy=v.copy(), zero_diagonal=bool(zero_diagonal))


def build_graph(model, zero_diagonal=False):
    """Edge weight = P(z1|f_i) * P(z1|f_j); self-loops kept unless asked otherwise."""
    return graph_from_relevancy(model.p_z_given_f[:, 0], zero_diagonal)


def save_graph_csv(graph, path):
    np.savetxt(path, graph.a, delimiter=",", fmt="%.17g")
