import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ilfs.dataset import FeatureMatrix
from ilfs.errors import NoConvergence, SingularMatrix
from ilfs.graph import graph_from_relevancy
from ilfs.plsa import EmConfig
from ilfs.ranker import (
    choose_r, energy_matrix, energy_matrix_rank1, order_by_score, rank, rank_graph,
    rank_relevancy, run_pipeline, scores, spectral_radius,
)
from ilfs.synth import SynthSpec, generate
from ilfs.verification import spectral_radius_exact, truncated_energy


# --- spectral radius -------------------------------------------------------

def test_rank_one_radius():
    v = np.array([0.8, 0.3, 0.5])
    rho, ok = spectral_radius(np.outer(v, v))
    assert ok
    assert rho == pytest.approx(0.98, rel=1e-12)


def test_zero_matrix_radius():
    assert spectral_radius(np.zeros((3, 3))) == (0.0, True)


def test_antidiagonal_radius():
    rho, ok = spectral_radius([[0, 0.5], [0.5, 0]])
    assert ok and rho == pytest.approx(0.5, rel=1e-12)


def test_nilpotent_radius():
    assert spectral_radius([[0.0, 1.0], [0.0, 0.0]])[0] == 0.0


def test_radius_upper_bounds_exact_for_positive(rng):
    for _ in range(50):
        n = int(rng.integers(1, 9))
        a = rng.uniform(0, 1, (n, n))
        rho, ok = spectral_radius(a)
        exact = spectral_radius_exact(a)
        assert ok
        assert rho == pytest.approx(exact, rel=1e-10)
        assert rho >= exact * (1 - 1e-12)


def test_radius_no_convergence_warns(rng):
    a = rng.uniform(0, 1, (6, 6))
    with pytest.warns(NoConvergence):
        rho, ok = spectral_radius(a, tol=1e-300, max_iter=3)
    assert not ok and rho > 0


def test_radius_rejects_negative():
    with pytest.raises(ValueError):
        spectral_radius([[-1.0]])


# --- r selection -----------------------------------------------------------

def test_choose_r():
    assert choose_r(0.98, 0.9) == pytest.approx(0.9 / 0.98)
    assert choose_r(0.98, 0.9) == pytest.approx(0.918367, abs=1e-6)
    assert choose_r(0.0, 0.9) == 0.9
    r = choose_r(2.0, 0.5)
    assert r == 0.25 and r * 2.0 < 1
    for bad in (0.0, 1.0, -0.2):
        with pytest.raises(ValueError):
            choose_r(1.0, bad)


# --- energy matrix ---------------------------------------------------------

def test_energy_of_zero_graph(backend):
    np.testing.assert_array_equal(energy_matrix(np.zeros((3, 3)), 0.9), 0)


def test_energy_two_by_two(backend):
    # (I - A)^-1 = [[4/3, 2/3], [2/3, 4/3]] for A = [[0, .5], [.5, 0]]
    c = energy_matrix([[0, 0.5], [0.5, 0]], 1.0)
    np.testing.assert_allclose(c, [[1 / 3, 2 / 3], [2 / 3, 1 / 3]], rtol=0, atol=1e-12)


def test_energy_scalar_geometric(backend):
    np.testing.assert_allclose(energy_matrix([[0.5]], 1.0), [[1.0]], rtol=0, atol=1e-12)


def test_energy_singular(backend):
    with pytest.raises(SingularMatrix):
        energy_matrix([[0.5]], 2.0)


def test_energy_equals_inverse_minus_identity(backend, rng):
    a = rng.uniform(0, 1, (7, 7))
    r = 0.9 / spectral_radius_exact(a)
    np.testing.assert_allclose(energy_matrix(a, r), np.linalg.inv(np.eye(7) - r * a) - np.eye(7),
                               atol=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=1, max_size=30), st.floats(0.05, 0.95))
def test_sherman_morrison_matches_lu(vs, damping):
    v = np.array(vs)
    r = choose_r(float(v @ v), damping)
    np.testing.assert_allclose(energy_matrix_rank1(v, r), energy_matrix(np.outer(v, v), r),
                               rtol=1e-10, atol=1e-10)


# --- scores and ordering ---------------------------------------------------

def test_scores():
    np.testing.assert_allclose(scores([[1 / 3, 2 / 3], [2 / 3, 1 / 3]]), [1, 1])
    np.testing.assert_array_equal(scores(np.zeros((2, 2))), [0, 0])


def test_rank_one_ordering_against_truncated_series():
    v = np.array([0.8, 0.3, 0.5])
    a = np.outer(v, v)
    r = choose_r(spectral_radius(a)[0], 0.9)
    brute = truncated_energy(a, r, 200).sum(axis=1)
    assert list(np.argsort(-brute)) == [0, 2, 1]
    ranking = rank_relevancy(v)
    assert ranking.order.tolist() == [0, 2, 1]
    np.testing.assert_allclose(ranking.scores, brute, rtol=1e-9)


def test_order_ties_by_index():
    assert order_by_score([1.0, 2.0, 1.0, 2.0 + 1e-15]).tolist() == [1, 3, 0, 2]
    assert order_by_score([0.0, 0.0]).tolist() == [0, 1]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=40).map(np.array),
       st.floats(0.01, 0.99), st.floats(0.01, 0.99))
def test_rank_one_order_follows_relevancy_for_any_damping(v, d1, d2):
    expected = order_by_score(v).tolist()
    assert rank_relevancy(v, d1).order.tolist() == expected
    assert rank_relevancy(v, d2).order.tolist() == expected


def test_rank_graph_rank1_method():
    v = np.array([0.2, 0.9, 0.4])
    lu = rank_graph(graph_from_relevancy(v))
    fast = rank_graph(graph_from_relevancy(v), method="rank1")
    np.testing.assert_allclose(lu.scores, fast.scores, rtol=1e-10)
    assert lu.order.tolist() == fast.order.tolist() == [1, 2, 0]
    with pytest.raises(ValueError):
        rank_graph(graph_from_relevancy(v, zero_diagonal=True), method="rank1")


def test_zero_diagonal_graph_ranks():
    g = graph_from_relevancy([0.2, 0.9, 0.4], zero_diagonal=True)
    ranking = rank_graph(g)
    assert ranking.order.tolist() == [1, 2, 0]
    assert np.all(ranking.scores >= 0)


# --- full pipeline ---------------------------------------------------------

def test_single_feature(backend):
    data = FeatureMatrix(np.array([[0.0], [1.0], [0.2], [0.9]]), np.array([1, 2, 1, 2]))
    ranking = rank(data)
    assert ranking.order.tolist() == [0]
    assert ranking.scores.shape == (1,)


def test_duplicate_columns_tie_by_index(backend, rng):
    base = generate(SynthSpec(n_samples=60, n_informative=2, n_noise=4, seed=3))
    X = base.values
    cols = [0, 1, 2, 3, 4, 5, 2]  # column 6 duplicates column 2
    data = FeatureMatrix(X[:, cols], base.labels)
    ranking = rank(data)
    assert ranking.scores[2] == pytest.approx(ranking.scores[6], abs=1e-10)
    pos = {f: i for i, f in enumerate(ranking.order.tolist())}
    assert pos[2] < pos[6]


@pytest.mark.parametrize("seed", range(5))
def test_feature_permutation_equivariance(seed):
    base = generate(SynthSpec(n_samples=80, n_informative=3, n_noise=12, separation=1.5, seed=seed))
    perm = np.random.default_rng(seed).permutation(base.n_features)
    a = rank(base)
    b = rank(base.select(perm))
    np.testing.assert_allclose(b.scores, a.scores[perm], rtol=1e-9, atol=1e-12)
    # compare orders once near-ties are grouped away
    s = np.sort(a.scores)[::-1]
    if np.all(np.diff(s) < -1e-8 * s[0]):
        assert perm[b.order].tolist() == a.order.tolist()


def test_scores_nonnegative_and_sorted(backend):
    data = generate(SynthSpec(n_samples=100, n_informative=3, n_noise=10, seed=9))
    res = run_pipeline(data, em=EmConfig(max_iterations=50))
    sc = res.ranking.scores
    assert np.all(np.isfinite(sc)) and np.all(sc >= 0)
    ordered = sc[res.ranking.order]
    assert np.all(np.diff(ordered) <= 1e-12 * ordered[0])
    assert res.ranking.r * res.ranking.spectral_radius == pytest.approx(0.9)


def test_pipeline_is_deterministic():
    data = generate(SynthSpec(n_samples=50, seed=4))
    a, b = rank(data), rank(data)
    assert a.scores.tobytes() == b.scores.tobytes()
    assert a.order.tolist() == b.order.tolist()


def test_backends_agree_on_pipeline(monkeypatch):
    from ilfs import _kernels
    from conftest import KERNEL_NAMES

    data = generate(SynthSpec(n_samples=120, seed=11))
    results = {}
    for name in _kernels.BACKENDS:
        impl = _kernels.get_impl(name)
        for k in KERNEL_NAMES:
            monkeypatch.setattr(_kernels, k, getattr(impl, k))
        results[name] = rank(data)
    np.testing.assert_allclose(results["numba"].scores, results["numpy"].scores, rtol=1e-8)
    assert results["numba"].order.tolist() == results["numpy"].order.tolist()


def test_ranking_json_shape():
    d = rank_relevancy([0.3, 0.6]).to_dict(top=1)
    assert list(d) == ["order", "scores", "r", "spectral_radius", "params"]
    assert d["order"] == [1] and len(d["scores"]) == 2


def test_no_warnings_on_normal_run():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        rank(generate(SynthSpec(n_samples=40, seed=2)))
