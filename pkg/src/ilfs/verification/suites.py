"""Randomized equivalence suites run by ``ilfs verify`` and the acceptance tests."""
from dataclasses import dataclass

import numpy as np

from .. import ranker
from .oracle import absorb_limit, enumerate_paths, fundamental_matrix, random_chain, truncated_energy

PATH_TOL = 1e-12
SERIES_TOL = 1e-8
MARKOV_TOL = 1e-10
SERIES_TERMS = 400
ABSORB_POWERS = (1, 2, 8, 64)


@dataclass
class SuiteResult:
    name: str
    trials: int
    tolerance: float
    max_deviation: float = 0.0
    failure: dict = None

    @property
    def passed(self):
        return self.failure is None

    def record(self, dev, case):
        dev = float(dev)
        if not dev <= self.max_deviation:
            self.max_deviation = dev
        if self.failure is None and not dev <= self.tolerance:
            self.failure = dict(case, deviation=dev)


def path_suite(trials, rng, n=4, max_length=6):
    """Walk enumeration against matrix powers."""
    res = SuiteResult("paths", trials, PATH_TOL)
    for trial in range(trials):
        a = rng.uniform(0.0, 1.0, (n, n))
        for length in range(1, max_length + 1):
            power = np.linalg.matrix_power(a, length)
            for i in range(n):
                for j in range(n):
                    dev = abs(enumerate_paths(a, i, j, length) - power[i, j])
                    res.record(dev, {"trial": trial, "a": a.tolist(), "i": i, "j": j, "l": length})
    return res


def series_suite(trials, rng, max_n=8, damping=ranker.DEFAULT_DAMPING):
    """Closed-form energy matrix against the truncated power series."""
    res = SuiteResult("series", trials, SERIES_TOL)
    for trial in range(trials):
        n = int(rng.integers(1, max_n + 1))
        a = rng.uniform(0.0, 1.0, (n, n))
        rho, _ = ranker.spectral_radius(a)
        r = ranker.choose_r(rho, damping)
        dev = np.max(np.abs(ranker.energy_matrix(a, r) - truncated_energy(a, r, SERIES_TERMS)))
        res.record(dev, {"trial": trial, "a": a.tolist(), "r": r})
    return res


def markov_suite(trials, rng, max_n=8, max_q=3):
    """Fundamental matrix minus I against the r = 1 energy matrix, plus T**l blocks."""
    res = SuiteResult("markov", trials, MARKOV_TOL)
    for trial in range(trials):
        n = int(rng.integers(1, max_n + 1))
        q = int(rng.integers(1, max_q + 1))
        chain = random_chain(rng, n, q)
        c = fundamental_matrix(chain)
        dev = np.max(np.abs((c - np.eye(n)) - ranker.energy_matrix(chain.a_block, 1.0)))
        case = {"trial": trial, "t": chain.t.tolist(), "q": q}
        res.record(dev, case)
        for l in ABSORB_POWERS:
            lim = absorb_limit(chain, l)
            res.record(max(lim.lower_left_error, lim.top_error), dict(case, l=l))
    return res


def run_all(trials=50, seed=0):
    rng = np.random.default_rng(seed)
    return [path_suite(trials, rng), series_suite(trials, rng), markov_suite(trials, rng)]
