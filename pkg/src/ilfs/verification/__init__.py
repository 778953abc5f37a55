"""Independent checks of the ranking kernel (path enumeration, series, Markov chains)."""
from .oracle import (
    AbsorbingChain,
    AbsorbLimit,
    absorb_limit,
    enumerate_paths,
    fundamental_matrix,
    random_chain,
    spectral_radius_exact,
    truncated_energy,
)
from .suites import SuiteResult, markov_suite, path_suite, run_all, series_suite

__all__ = [
    "AbsorbingChain",
    "AbsorbLimit",
    "SuiteResult",
    "absorb_limit",
    "enumerate_paths",
    "fundamental_matrix",
    "markov_suite",
    "path_suite",
    "random_chain",
    "run_all",
    "series_suite",
    "spectral_radius_exact",
    "truncated_energy",
]
