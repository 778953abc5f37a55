"""Backend dispatch for the numeric hot loops.

``ILFS_BACKEND`` picks the implementation at import time:

* ``numba`` (default when numba imports) -- compiled loop kernels
* ``numpy`` -- vectorized pure-numpy kernels

Both modules expose the same functions; callers go through the names
re-exported here.
"""
import logging
import os

from . import numpy_impl

log = logging.getLogger(__name__)

BACKENDS = ("numba", "numpy")


def _load(name):
    if name == "numpy":
        return numpy_impl
    try:
        from . import numba_impl
    except ImportError:
        log.warning("numba unavailable, using numpy kernels")
        return numpy_impl
    return numba_impl


_requested = os.environ.get("ILFS_BACKEND", "numba").strip().lower() or "numba"
if _requested not in BACKENDS:
    raise ImportError(f"ILFS_BACKEND must be one of {BACKENDS}, got {_requested!r}")

impl = _load(_requested)
BACKEND = "numba" if impl is not numpy_impl else "numpy"

fisher_priors = impl.fisher_priors
tokenize_counts = impl.tokenize_counts
e_step = impl.e_step
m_step = impl.m_step
log_likelihood = impl.log_likelihood
lu_factor = impl.lu_factor
lu_solve = impl.lu_solve


def get_impl(name):
    """Return a specific backend module (tests and benchmarks compare both)."""
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}")
    return _load(name)
