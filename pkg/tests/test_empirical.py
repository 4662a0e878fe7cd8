import io

import numpy as np
import pytest

from tailgraph.empirical import EmpiricalDistribution


def test_from_observations_sorts_and_counts():
    d = EmpiricalDistribution.from_observations([3, 1, 3, 2, 3])
    assert d.values.tolist() == [1, 2, 3]
    assert d.counts.tolist() == [1, 1, 3]
    assert d.total == 5
    assert d.is_integral


def test_from_counts_mapping():
    d = EmpiricalDistribution.from_counts({2: 2})
    assert d.values.tolist() == [2]
    assert d.counts.tolist() == [2]


def test_construction_validation():
    with pytest.raises(ValueError):
        EmpiricalDistribution(np.array([2.0, 1.0]), np.array([1, 1]))
    with pytest.raises(ValueError):
        EmpiricalDistribution(np.array([1.0, 2.0]), np.array([1, 0]))
    with pytest.raises(ValueError):
        EmpiricalDistribution(np.array([0.0, 2.0]), np.array([1, 1]))


def test_tail_and_n_geq():
    d = EmpiricalDistribution.from_counts({1: 5, 3: 2, 7: 1})
    assert d.n_geq(3) == 3
    assert d.n_geq(4) == 1
    t = d.tail(3)
    assert t.values.tolist() == [3, 7]
    assert t.total == 3


def test_ccdf_survival_convention():
    # P(X >= x): CCDF(1) = 1.0, CCDF(2) = 0.5
    d = EmpiricalDistribution.from_counts({1: 1, 2: 1})
    assert d.ccdf().tolist() == [1.0, 0.5]


def test_frequency_file_round_trip(tmp_path):
    d = EmpiricalDistribution.from_counts({1: 10, 5: 3, 250: 1})
    path = tmp_path / "dist.tsv"
    d.save(path)
    back = EmpiricalDistribution.load(path)
    assert back.values.tolist() == d.values.tolist()
    assert back.counts.tolist() == d.counts.tolist()


def test_raw_value_file():
    d = EmpiricalDistribution.load(io.StringIO("3\n1\n3\n# comment\n2\n"))
    assert d.values.tolist() == [1, 2, 3]
    assert d.counts.tolist() == [1, 1, 2]


def test_mixed_file_rejected():
    with pytest.raises(ValueError):
        EmpiricalDistribution.load(io.StringIO("1\t4\n7\n"))


def test_to_observations_expands():
    d = EmpiricalDistribution.from_counts({2: 3, 4: 1})
    assert d.to_observations().tolist() == [2, 2, 2, 4]


def test_mean():
    d = EmpiricalDistribution.from_counts({2: 1, 6: 1})
    assert d.mean() == 4.0
