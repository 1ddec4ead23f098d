from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffprobe.blockgen import (BlockLinearMap, check_continuous_partial_differentiability, cr_check,
                                fit_block_linear, probe_block_cauchy_like, scalar_as_block, wirtinger_derivatives)
from diffprobe.config import ProbeConfig
from diffprobe.criteria import Verdict, probe_cauchy_like
from diffprobe.funcorpus import (M1, M2, BlockField, ComplexFieldSample, corpus_list, get_block_field)

CFG = ProbeConfig()
MATS = (M1, M2)


@given(st.lists(st.floats(-10, 10), min_size=2, max_size=2), st.lists(st.floats(-10, 10), min_size=2, max_size=2),
       st.floats(-10, 10))
def test_block_linear_map_is_linear(a, b, c):
    L = BlockLinearMap(0, M1)
    a, b = np.array(a), np.array(b)
    assert np.all(L.apply(np.zeros(2)) == 0)
    np.testing.assert_allclose(L.apply(a + b), L.apply(a) + L.apply(b), atol=1e-12)
    np.testing.assert_allclose(L.apply(c * a), c * L.apply(a), atol=1e-12)


class TestFit:
    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 2**31))
    def test_linear_recovered_for_any_seed(self, seed):
        F = get_block_field("block_linear")
        for j in (0, 1):
            fit = fit_block_linear(F, j, cfg=CFG.replace(seed=seed))
            assert np.max(np.abs(fit.map.matrix - MATS[j])) <= 1e-10
            assert fit.partially_differentiable is True

    def test_cross_term_vanishes_on_blocks(self):
        F = get_block_field("block_crossnorm")
        for j in (0, 1):
            assert np.max(np.abs(fit_block_linear(F, j, cfg=CFG).map.matrix - MATS[j])) <= 1e-10

    def test_norm_restriction_fails(self):
        fit = fit_block_linear(get_block_field("block_normpartial"), 0, cfg=CFG)
        assert fit.partially_differentiable is False

    def test_bad_index(self):
        with pytest.raises(IndexError):
            fit_block_linear(get_block_field("block_linear"), 2, cfg=CFG)


class TestBlockCauchyLike:
    def test_linear_zero_residual(self):
        v = probe_block_cauchy_like(get_block_field("block_linear"), cfg=CFG)
        assert v.verdict is Verdict.CONSISTENT
        assert max(abs(x) for e in v.evidence for x in e.samples.values) <= 1e-14

    def test_crossnorm_quadratic(self):
        v = probe_block_cauchy_like(get_block_field("block_crossnorm"), cfg=CFG)
        assert v.verdict is Verdict.CONSISTENT
        assert v.aggregate.estimate.slope == pytest.approx(2.0, abs=0.1)

    def test_crosssqrt_refuted(self):
        v = probe_block_cauchy_like(get_block_field("block_crosssqrt"), cfg=CFG)
        assert v.verdict is Verdict.REFUTED
        assert v.aggregate.estimate.ratio_tail[-1] == pytest.approx(1.0, abs=0.05)

    def test_non_finite_block_is_inconclusive(self):
        bad = BlockField("bad", (1, 1), 1, lambda y: np.array([math.nan if y[0][0] < 1e-3 and y[0][0] else 0.0]))
        assert probe_block_cauchy_like(bad, cfg=CFG).verdict is Verdict.INCONCLUSIVE

    @pytest.mark.parametrize("f", corpus_list(), ids=lambda f: f.name)
    def test_reduction_to_scalar_probe(self, f):
        assert probe_block_cauchy_like(scalar_as_block(f), cfg=CFG).verdict is probe_cauchy_like(f, cfg=CFG).verdict


class TestContinuity:
    def test_linear_no_drift(self):
        m = check_continuous_partial_differentiability(get_block_field("block_linear"), 1, cfg=CFG)
        assert m.continuous is True
        assert max(m.samples.values) <= 1e-6

    def test_smooth_jacobian(self):
        F = get_block_field("block_smoothjac")
        assert check_continuous_partial_differentiability(F, 1, cfg=CFG).continuous is True
        assert check_continuous_partial_differentiability(F, 0, cfg=CFG).continuous is True

    def test_jump_coefficient(self):
        m = check_continuous_partial_differentiability(get_block_field("block_jump"), 1, cfg=CFG)
        assert m.continuous is False
        assert min(m.samples.values) >= 1.0

    def test_single_block_rejected(self):
        F = BlockField("one", (2,), 1, lambda y: np.array([y[0][0]]))
        with pytest.raises(ValueError):
            check_continuous_partial_differentiability(F, 0, cfg=CFG)


def _complex(name, fn, n=1):
    return ComplexFieldSample(name, n, fn)


class TestCauchyRiemann:
    def test_examples(self):
        assert cr_check(_complex("z2", lambda z: z[0] ** 2), CFG).verdict is Verdict.CONSISTENT
        conj = cr_check(_complex("conj", lambda z: np.conj(z[0])), CFG)
        assert conj.verdict is Verdict.REFUTED
        assert abs(conj.detail.dzbar[0]) == pytest.approx(1.0, abs=1e-6)
        abs2 = cr_check(_complex("abs2", lambda z: z[0] * np.conj(z[0])), CFG)
        assert abs2.verdict is Verdict.CONSISTENT
        assert abs(abs2.detail.dzbar[0]) <= 1e-9

    def test_wirtinger_of_z_squared_plus_z(self):
        dz, dzbar = wirtinger_derivatives(_complex("p", lambda z: z[0] ** 2 + (2 - 1j) * z[0]), CFG)
        assert dz[0] == pytest.approx(2 - 1j, abs=1e-9)
        assert abs(dzbar[0]) <= 1e-9

    coeff = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)

    @settings(max_examples=15, deadline=None)
    @given(st.lists(coeff, min_size=3, max_size=3))
    def test_holomorphic_polynomials_consistent(self, a):
        f = _complex("poly", lambda z: a[0] * z[0] + a[1] * z[0] ** 2 + a[2] * z[0] ** 3)
        assert cr_check(f, CFG).verdict is Verdict.CONSISTENT

    @settings(max_examples=15, deadline=None)
    @given(st.lists(coeff, min_size=3, max_size=3), st.floats(0.01, 5.0), st.floats(0, 2 * math.pi))
    def test_conjugate_monomial_refutes(self, a, r, theta):
        c = r * complex(math.cos(theta), math.sin(theta))
        f = _complex("poly", lambda z: a[0] * z[0] + a[1] * z[0] ** 2 + a[2] * z[0] ** 3 + c * np.conj(z[0]))
        v = cr_check(f, CFG)
        assert v.verdict is Verdict.REFUTED
        assert abs(v.detail.dzbar[0]) == pytest.approx(r, abs=1e-6)

    def test_two_variables(self):
        f = _complex("zw", lambda z: z[0] * z[1] + z[1] ** 2, n=2)
        assert cr_check(f, CFG).verdict is Verdict.CONSISTENT
        g = _complex("zwbar", lambda z: z[0] * z[1] + 0.01 * np.conj(z[1]), n=2)
        v = cr_check(g, CFG)
        assert v.verdict is Verdict.REFUTED
        assert abs(v.detail.dzbar[0]) <= 1e-9
        assert abs(v.detail.dzbar[1]) == pytest.approx(0.01, abs=1e-6)
