import numpy as np
import pytest

from ilfs.errors import EmptySelection, InvalidSpec
from ilfs.synth import SynthSpec, fisher_ratio, generate, generate_split, nearest_centroid_accuracy
from ilfs.dataset import FeatureMatrix


@pytest.mark.parametrize("kwargs", [dict(separation=0), dict(separation=-1), dict(n_informative=0),
                                    dict(n_samples=1), dict(n_noise=-1), dict(seed=-1)])
def test_invalid_spec(kwargs):
    with pytest.raises(InvalidSpec):
        SynthSpec(**kwargs)


def test_seed_determinism():
    a = generate_split(SynthSpec(seed=42))
    b = generate_split(SynthSpec(seed=42))
    assert a.train.values.tobytes() == b.train.values.tobytes()
    assert a.informative == b.informative
    c = generate(SynthSpec(seed=43))
    assert c.values.tobytes() != a.train.values.tobytes()


def test_shape_and_balance():
    sd = generate_split(SynthSpec(n_samples=201, n_informative=3, n_noise=7, seed=1), n_test=50)
    assert sd.train.values.shape == (201, 10)
    assert sd.test.values.shape == (50, 10)
    assert np.bincount(sd.train.labels).tolist() == [0, 101, 100]
    assert np.bincount(sd.test.labels).tolist() == [0, 25, 25]
    assert len(sd.informative) == 3 and len(set(sd.informative)) == 3


def test_test_split_shares_ground_truth():
    sd = generate_split(SynthSpec(seed=5), n_test=400)
    fr = fisher_ratio(sd.test)
    noise = [j for j in range(50) if j not in sd.informative]
    assert fr[list(sd.informative)].min() > fr[noise].max()


def test_informative_features_separate_classes():
    for seed in range(20):
        sd = generate_split(SynthSpec(n_samples=200, n_informative=5, n_noise=45, separation=3, seed=seed))
        fr = fisher_ratio(sd.train)
        info = list(sd.informative)
        noise = [j for j in range(50) if j not in sd.informative]
        assert fr[info].min() > fr[noise].max()


def test_centroid_sample_is_classified_to_its_class():
    train = FeatureMatrix(np.array([[0.0, 0], [2, 0], [10, 10], [12, 10]]), np.array([1, 1, 2, 2]))
    test = FeatureMatrix(np.array([[1.0, 0], [11, 10]]), np.array([1, 2]))
    assert nearest_centroid_accuracy(train, test, [0, 1]) == 1.0
    swapped = FeatureMatrix(test.values, np.array([2, 1]))
    assert nearest_centroid_accuracy(train, swapped, [0, 1]) == 0.0


def test_well_separated_data_is_perfect():
    sd = generate_split(SynthSpec(n_samples=100, n_informative=4, n_noise=0, separation=20, seed=3), n_test=100)
    assert nearest_centroid_accuracy(sd.train, sd.test, range(4)) == 1.0


def test_selection_order_does_not_matter():
    sd = generate_split(SynthSpec(seed=8), n_test=60)
    sel = [3, 17, 40, 2]
    assert nearest_centroid_accuracy(sd.train, sd.test, sel) == nearest_centroid_accuracy(
        sd.train, sd.test, sel[::-1])


def test_empty_selection():
    sd = generate_split(SynthSpec(seed=8), n_test=10)
    with pytest.raises(EmptySelection):
        nearest_centroid_accuracy(sd.train, sd.test, [])
    with pytest.raises(IndexError):
        nearest_centroid_accuracy(sd.train, sd.test, [50])
