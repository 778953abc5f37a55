"""Feature ranking by latent relevancy and regularized graph walks.

Pipeline: :func:`quantize_all` -> :func:`fit` -> :func:`build_graph` ->
:func:`rank_graph`; :func:`rank` runs all of it on a :class:`FeatureMatrix`.
"""
from ._kernels import BACKEND
from .dataset import ClassStats, FeatureMatrix, class_stats, load_csv, save_csv
from .errors import IlfsError
from .graph import AffinityGraph, build_graph, graph_from_relevancy
from .plsa import EmConfig, PlsaModel, fit
from .quantizer import TokenizedFeatures, quantize_all
from .ranker import Ranking, rank, rank_graph, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AffinityGraph",
    "ClassStats",
    "EmConfig",
    "FeatureMatrix",
    "IlfsError",
    "PlsaModel",
    "Ranking",
    "TokenizedFeatures",
    "build_graph",
    "class_stats",
    "fit",
    "graph_from_relevancy",
    "load_csv",
    "quantize_all",
    "rank",
    "rank_graph",
    "run_pipeline",
    "save_csv",
]
