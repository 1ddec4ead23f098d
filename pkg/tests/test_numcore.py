from __future__ import annotations

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffprobe.numcore import (EPS, BlockVector, DirectionSet, RadialSchedule, Vector, dropped_radii, kept_radii,
                               make_directions, radii, radius_floor, unit_axis)


class TestVector:
    def test_norm_and_zero(self):
        assert Vector([3.0, 4.0]).norm() == 5.0
        assert Vector.zeros(3).norm() == 0.0

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Vector([1.0, float("nan")])
        with pytest.raises(ValueError):
            Vector([float("inf")])

    def test_immutable(self):
        v = Vector([1.0, 2.0])
        with pytest.raises(ValueError):
            v.coords[0] = 5.0

    def test_equality_and_hash(self):
        assert Vector([1, 2]) == Vector([1.0, 2.0])
        assert hash(Vector([1, 2])) == hash(Vector([1.0, 2.0]))
        assert Vector([1, 2]) != Vector([2, 1])

    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=6))
    def test_norm_zero_iff_all_zero(self, xs):
        v = Vector(xs)
        assert v.norm() >= 0
        assert (v.norm() == 0) == all(x == 0 for x in xs)


class TestBlockVector:
    def test_block_norm_is_max(self):
        y = BlockVector([[3.0, 4.0], [1.0, 0.0, 0.0]])
        assert y.block_norm() == 5.0
        assert y.dims == (2, 3)

    def test_zero_iff_all_blocks_zero(self):
        assert BlockVector.zeros((2, 3)).block_norm() == 0.0
        assert BlockVector([[0.0], [1e-300]]).block_norm() > 0.0

    def test_only_keeps_one_block(self):
        y = BlockVector([[1.0, 2.0], [3.0]])
        z = y.only(1)
        assert z[0] == Vector([0.0, 0.0]) and z[1] == Vector([3.0])

    def test_needs_a_block(self):
        with pytest.raises(ValueError):
            BlockVector([])


class TestUnitAxis:
    def test_examples(self):
        assert unit_axis(1, 3).tolist() == [1.0, 0.0, 0.0]
        assert unit_axis(3, 3).tolist() == [0.0, 0.0, 1.0]
        with pytest.raises(ValueError):
            unit_axis(4, 3)
        with pytest.raises(ValueError):
            unit_axis(0, 3)

    @given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n), st.integers(1, n))))
    def test_orthonormal(self, args):
        n, i, j = args
        assert unit_axis(i, n).norm() == 1.0
        if i != j:
            assert unit_axis(i, n).dot(unit_axis(j, n)) == 0.0


class TestMakeDirections:
    def test_axes_only(self):
        d = make_directions(2, extra=0, seed=0)
        assert [v.tolist() for v in d] == [[1, 0], [-1, 0], [0, 1], [0, -1]]
        assert [v.tolist() for v in make_directions(1, 0, 7)] == [[1.0], [-1.0]]

    def test_extra_reproducible(self):
        a = make_directions(2, extra=8, seed=42)
        b = make_directions(2, extra=8, seed=42)
        assert len(a) == 12
        np.testing.assert_array_equal(a.as_array(), b.as_array())

    def test_seed_changes_extras_only(self):
        a = make_directions(3, extra=5, seed=1).as_array()
        b = make_directions(3, extra=5, seed=2).as_array()
        np.testing.assert_array_equal(a[:6], b[:6])
        assert not np.allclose(a[6:], b[6:])

    def test_diagonals(self):
        d = make_directions(2, diagonals=True).as_array()
        assert len(d) == 8
        assert np.allclose(np.abs(d[4:]), 1 / math.sqrt(2))

    @settings(max_examples=40)
    @given(st.integers(1, 6), st.integers(0, 20), st.integers(0, 2**32), st.booleans())
    def test_unit_and_axes_first(self, n, extra, seed, diag):
        d = make_directions(n, extra, seed, diag)
        arr = d.as_array()
        assert np.all(np.abs(np.linalg.norm(arr, axis=1) - 1.0) <= 1e-12)
        for i in range(1, n + 1):
            assert d[2 * (i - 1)] == unit_axis(i, n)
            assert d[2 * (i - 1) + 1] == unit_axis(i, n).scaled(-1)

    def test_direction_set_rejects_non_unit(self):
        with pytest.raises(ValueError):
            DirectionSet((Vector([1.0, 1.0]),), seed=0)


class TestRadii:
    def test_examples(self):
        assert radii(RadialSchedule(1.0, 0.5, 3)) == [1.0, 0.5, 0.25]
        np.testing.assert_allclose(radii(RadialSchedule(0.1, 0.1, 4)), [0.1, 0.01, 0.001, 0.0001], rtol=1e-15)
        with pytest.raises(ValueError):
            RadialSchedule(1.0, 1.5, 4)
        with pytest.raises(ValueError):
            RadialSchedule(-1.0, 0.5, 4)
        with pytest.raises(ValueError):
            RadialSchedule(1.0, 0.5, 0)

    def test_floor_drops_with_warning(self):
        s = RadialSchedule(1.0, 0.1, 20)
        with pytest.warns(RuntimeWarning):
            r = radii(s)
        assert min(r) >= radius_floor(1.0) == 1e3 * EPS
        assert len(r) + dropped_radii(s) == 20
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert kept_radii(s) == r

    @given(st.floats(1e-3, 1e3), st.floats(0.05, 0.95), st.integers(1, 40))
    def test_ratio_and_monotone(self, rho0, lam, count):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            r = np.array(radii(RadialSchedule(rho0, lam, count)))
        assert np.all(np.diff(r) < 0)
        assert np.all(r >= radius_floor(rho0))
        if r.size > 1:
            np.testing.assert_allclose(r[1:] / r[:-1], lam, rtol=1e-15)
