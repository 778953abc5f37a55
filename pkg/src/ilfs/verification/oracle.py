"""Brute-force and Markov-chain cross-checks for the ranking kernel.

Nothing here calls into :mod:`ilfs._kernels`; matrix powers use plain
matmul, walk sums use explicit enumeration and the fundamental matrix uses
LAPACK, so agreement with :func:`ilfs.ranker.energy_matrix` is evidence
rather than tautology.
"""
import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..errors import BudgetExceeded, SingularMatrix

MAX_NODES = 8
MAX_LENGTH = 12


def enumerate_paths(a, i, j, length):
    """Sum of edge-weight products over every walk i -> j with ``length`` edges.

    Revisits are allowed, so this equals ``(A ** length)[i, j]``; the point
    is to compute it without matrix algebra.
    """
    a = np.asarray(a, dtype=np.float64)
    n = a.shape[0]
    if n > MAX_NODES or length > MAX_LENGTH:
        raise BudgetExceeded(f"enumeration limited to n <= {MAX_NODES}, l <= {MAX_LENGTH}")
    if length < 1:
        raise ValueError("length must be >= 1")
    w = a.tolist()
    terms = []
    for middle in itertools.product(range(n), repeat=length - 1):
        prod = 1.0
        prev = i
        for v in middle:
            prod *= w[prev][v]
            prev = v
        terms.append(prod * w[prev][j])
    return math.fsum(terms)


def truncated_energy(a, r, L):
    """Partial sum sum_{l=1..L} r**l A**l by repeated multiplication."""
    if L < 1:
        raise ValueError("L must be >= 1")
    ra = r * np.asarray(a, dtype=np.float64)
    term = ra.copy()
    total = ra.copy()
    for _ in range(L - 1):
        term = term @ ra
        total += term
    return total


@dataclass(frozen=True)
class AbsorbingChain:
    """Transition matrix in canonical form [[I, 0], [R, A]] (absorbing states first)."""

    t: np.ndarray
    q: int

    def __post_init__(self):
        t = np.asarray(self.t, dtype=np.float64)
        size = t.shape[0]
        if t.shape != (size, size) or not 1 <= self.q < size:
            raise ValueError("need a square matrix with 1 <= q < size")
        if np.any(t < 0):
            raise ValueError("transition probabilities must be nonnegative")
        if np.max(np.abs(t.sum(axis=1) - 1.0)) > 1e-12:
            raise ValueError("rows must sum to 1")
        if not np.array_equal(t[:self.q], np.eye(size)[:self.q]):
            raise ValueError("absorbing rows must be unit rows")
        object.__setattr__(self, "t", t)
        if spectral_radius_exact(self.a_block) >= 1.0:
            raise ValueError("transient block must have spectral radius < 1")

    @classmethod
    def from_blocks(cls, r_block, a_block):
        r_block = np.asarray(r_block, dtype=np.float64)
        a_block = np.asarray(a_block, dtype=np.float64)
        n, q = r_block.shape
        t = np.zeros((q + n, q + n))
        t[:q, :q] = np.eye(q)
        t[q:, :q] = r_block
        t[q:, q:] = a_block
        return cls(t, q)

    @property
    def r_block(self):
        return self.t[self.q:, :self.q]

    @property
    def a_block(self):
        return self.t[self.q:, self.q:]


def spectral_radius_exact(a):
    a = np.asarray(a, dtype=np.float64)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(a))))


def random_chain(rng, n, q, max_row_mass=0.85):
    """Random absorbing chain whose transient rows keep at most ``max_row_mass``."""
    a = rng.uniform(0.0, 1.0, (n, n))
    mass = rng.uniform(0.05, max_row_mass, n)
    a *= (mass / a.sum(axis=1))[:, None]
    r = rng.uniform(0.0, 1.0, (n, q))
    r *= ((1.0 - a.sum(axis=1)) / r.sum(axis=1))[:, None]
    return AbsorbingChain.from_blocks(r, a)


def fundamental_matrix(chain):
    """(I - A)^-1: expected visits to each transient state before absorption."""
    a = chain.a_block
    n = a.shape[0]
    m = np.eye(n) - a
    try:
        c = np.linalg.inv(m)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix(str(exc)) from None
    if not np.all(np.isfinite(c)):
        raise SingularMatrix("non-finite inverse")
    return c


@dataclass(frozen=True)
class AbsorbLimit:
    power: np.ndarray  # T**l
    lower_left_error: float  # max |block - (I + A + ... + A^(l-1)) R|
    lower_right_max: float  # max |A^l|
    top_error: float  # max deviation of the top rows from [I, 0]

    def holds(self, tol=1e-10):
        return self.lower_left_error <= tol and self.top_error <= tol


def absorb_limit(chain, l):
    """T**l by repeated multiplication, checked against its block closed form."""
    if l < 1:
        raise ValueError("l must be >= 1")
    t = chain.t
    q = chain.q
    power = t.copy()
    for _ in range(l - 1):
        power = power @ t
    a, r = chain.a_block, chain.r_block
    n = a.shape[0]
    geo = np.eye(n)
    ak = np.eye(n)
    for _ in range(l - 1):
        ak = ak @ a
        geo += ak
    expected_ll = geo @ r
    top = np.zeros((q, q + n))
    top[:, :q] = np.eye(q)
    return AbsorbLimit(
        power=power,
        lower_left_error=float(np.max(np.abs(power[q:, :q] - expected_ll))),
        lower_right_max=float(np.max(np.abs(power[q:, q:]))),
        top_error=float(np.max(np.abs(power[:q] - top))),
    )
