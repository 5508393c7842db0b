import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soloewner import (
    DataError,
    SampleSet,
    conjugate_close,
    demo_system,
    partition,
    sample_transfer,
    train_test_split,
)
from soloewner.sampling import FIRST_HALF_RIGHT, INTERLEAVE, PartitionedData, merge


def make_set(points, values=None):
    points = np.asarray(points, dtype=complex)
    if values is None:
        values = np.arange(1, len(points) + 1, dtype=complex)
    return SampleSet(points, np.asarray(values, dtype=complex))


class TestSampleSet:
    def test_rejects_duplicates(self):
        with pytest.raises(DataError):
            make_set([1j, 1j])

    def test_rejects_nonfinite(self):
        with pytest.raises(DataError):
            make_set([1j, complex("inf")])

    def test_iteration_order(self):
        s = make_set([1j, 2j], [3.0, 4.0])
        pairs = [(f.point, f.value) for f in s]
        assert pairs == [(1j, 3.0 + 0j), (2j, 4.0 + 0j)]


class TestPartition:
    def test_interleave_assignment(self):
        s = make_set([1.0, 2.0, 3.0, 4.0])
        p = partition(s, INTERLEAVE)
        assert np.array_equal(p.lam, [1.0, 3.0])
        assert np.array_equal(p.mu, [2.0, 4.0])

    def test_first_half_right(self):
        s = make_set([1.0, 2.0])
        p = partition(s, FIRST_HALF_RIGHT)
        assert np.array_equal(p.lam, [1.0])
        assert np.array_equal(p.mu, [2.0])

    def test_odd_count_rejected(self):
        with pytest.raises(DataError, match="[Oo]dd"):
            partition(make_set([1.0, 2.0, 3.0]))

    def test_partition_then_merge_recovers(self):
        rng = np.random.default_rng(0)
        pts = rng.standard_normal(12) + 1j * rng.standard_normal(12)
        vals = rng.standard_normal(12) + 1j * rng.standard_normal(12)
        s = SampleSet(pts, vals)
        for strategy in (INTERLEAVE, FIRST_HALF_RIGHT):
            back = merge(partition(s, strategy), strategy)
            assert np.array_equal(back.points, s.points)
            assert np.array_equal(back.values, s.values)

    def test_cross_equal_points_rejected(self):
        with pytest.raises(DataError):
            PartitionedData(lam=[1.0], h_lam=[1.0], mu=[1.0], h_mu=[2.0])


class TestConjugateClose:
    def test_appends_conjugate(self):
        s = make_set([1j], [1 + 2j])
        closed = conjugate_close(s)
        assert len(closed) == 2
        assert closed.points[1] == -1j
        assert closed.values[1] == 1 - 2j

    def test_real_point_unchanged(self):
        s = make_set([1.0], [3.0])
        assert conjugate_close(s) is s

    def test_inconsistent_pair_rejected(self):
        s = SampleSet(np.array([1j, -1j]), np.array([1.0 + 0j, 5.0 + 0j]))
        with pytest.raises(DataError, match="inconsistent"):
            conjugate_close(s)

    def test_consistent_pair_kept(self):
        s = SampleSet(np.array([1j, -1j]), np.array([1 + 2j, 1 - 2j]))
        closed = conjugate_close(s)
        assert len(closed) == 2

    @given(st.lists(
        st.tuples(st.floats(0.1, 10.0), st.floats(-3.0, 3.0), st.floats(-3.0, 3.0)),
        min_size=1, max_size=8, unique_by=lambda t: t[0],
    ))
    @settings(max_examples=60, deadline=None)
    def test_idempotent(self, triples):
        points = np.array([complex(0.0, w) for w, _, _ in triples])
        values = np.array([complex(a, b) for _, a, b in triples])
        once = conjugate_close(SampleSet(points, values))
        twice = conjugate_close(once)
        assert np.array_equal(once.points, twice.points)
        assert np.array_equal(once.values, twice.values)


class TestTrainTestSplit:
    def test_80_20_of_20(self):
        s = make_set(1j * np.arange(1, 21))
        train, test = train_test_split(s, 0.2, seed=0)
        assert len(train) == 16 and len(test) == 4

    def test_even_training_adjustment(self):
        s = make_set(1j * np.arange(1, 11))
        train, test = train_test_split(s, 0.3, seed=0)
        assert len(train) == 8 and len(test) == 2

    def test_deterministic(self):
        s = make_set(1j * np.arange(1, 21))
        a = train_test_split(s, 0.2, seed=7)
        b = train_test_split(s, 0.2, seed=7)
        assert np.array_equal(a[0].points, b[0].points)
        assert np.array_equal(a[1].points, b[1].points)

    def test_partition_of_data(self):
        s = make_set(1j * np.arange(1, 21))
        train, test = train_test_split(s, 0.2, seed=3)
        union = np.sort_complex(np.concatenate([train.points, test.points]))
        assert np.array_equal(union, np.sort_complex(s.points))

    def test_bad_fraction(self):
        s = make_set(1j * np.arange(1, 9))
        with pytest.raises(DataError):
            train_test_split(s, 1.5, seed=0)


class TestSampleTransfer:
    def test_demo_at_zero(self):
        s = sample_transfer(demo_system(), [0.0])
        assert s.values[0] == pytest.approx(8.5, rel=1e-14)

    def test_log_band_sampling_finite(self):
        pts = 1j * np.logspace(-1, 1, 20)
        s = sample_transfer(demo_system(), pts)
        assert len(s) == 20
        assert np.all(np.isfinite(s.values))

    def test_empty_points(self):
        s = sample_transfer(demo_system(), [])
        assert len(s) == 0

    def test_conjugate_symmetry_of_real_system(self):
        sys = demo_system()
        rng = np.random.default_rng(1)
        for _ in range(10):
            s = complex(rng.uniform(-1, 1), rng.uniform(0.5, 5))
            h = sample_transfer(sys, [s]).values[0]
            h_conj = sample_transfer(sys, [np.conj(s)]).values[0]
            assert abs(h_conj - np.conj(h)) <= 1e-12 * (1.0 + abs(h))
