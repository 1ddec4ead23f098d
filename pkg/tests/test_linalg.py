from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from diffprobe.linalg import SingularMatrixError, det, hadamard_bound, lu_factor, solve
from oracles import leibniz_det

square = st.integers(1, 5).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-100, 100, allow_nan=False, allow_infinity=False)))


@settings(max_examples=150)
@given(square)
def test_det_matches_leibniz(m):
    expected = leibniz_det(m.tolist())
    scale = max(1.0, hadamard_bound(m))
    assert abs(det(m) - expected) <= 1e-10 * scale


@settings(max_examples=150)
@given(square)
def test_hadamard_bound_holds(m):
    assert abs(det(m)) <= hadamard_bound(m) * (1 + 1e-12) + 1e-300


def test_hadamard_examples():
    assert hadamard_bound(np.eye(3)) == 1.0
    t = 0.3
    m = np.array([[0, t, 0], [0, 0, t], [t * t, t, t]])
    assert hadamard_bound(m) == pytest.approx(t * t * np.sqrt(t ** 4 + 2 * t * t), rel=1e-15)
    assert hadamard_bound(np.array([[1.0, 2.0], [0.0, 0.0]])) == 0.0


def test_det_sign_under_row_swap():
    a = np.array([[0.0, 2.0, 1.0], [1.0, 1.0, 0.0], [3.0, 0.0, 1.0]])
    assert det(a) == pytest.approx(-det(a[[1, 0, 2]]))
    assert det(a) == pytest.approx(leibniz_det(a.tolist()))


def test_lu_reconstructs():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((5, 5))
    lu, perm, _ = lu_factor(a)
    L = np.tril(lu, -1) + np.eye(5)
    U = np.triu(lu)
    np.testing.assert_allclose(L @ U, a[perm], atol=1e-12)


def test_solve_and_singular():
    a = np.array([[4.0, 1.0], [2.0, 3.0]])
    b = np.array([1.0, 2.0])
    np.testing.assert_allclose(a @ solve(a, b), b, atol=1e-14)
    with pytest.raises(SingularMatrixError):
        solve(np.array([[1.0, 2.0], [2.0, 4.0]]), b)
    with pytest.raises(ValueError):
        det(np.ones((2, 3)))
