import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import l1newton as ln
from oracle import oracle_minimize, oracle_objective


class TestWeights:
    def test_positive_required(self):
        with pytest.raises(ValueError):
            ln.Weights(np.array([0.5, 0.0]))
        with pytest.raises(ValueError):
            ln.Weights(np.array([-1.0, 2.0]))

    def test_lower_bound_defaults_to_min(self):
        w = ln.Weights(np.array([0.3, 0.7]))
        assert w.w0 == 0.3

    def test_explicit_lower_bound_enforced(self):
        with pytest.raises(ValueError):
            ln.Weights(np.array([0.3, 0.7]), w0=0.5)

    def test_constant(self):
        w = ln.Weights.constant(2.0, 4)
        assert len(w) == 4
        np.testing.assert_array_equal(w.w, np.full(4, 2.0))


class TestProblem:
    def test_gamma_positive(self):
        with pytest.raises(ValueError):
            ln.Problem(K=ln.identity(2), f=np.zeros(2),
                       w=ln.Weights.constant(1.0, 2), gamma=0.0)

    def test_dimension_checks(self):
        with pytest.raises(ValueError):
            ln.Problem(K=ln.identity(2), f=np.zeros(3),
                       w=ln.Weights.constant(1.0, 2), gamma=1.0)
        with pytest.raises(ValueError):
            ln.Problem(K=ln.identity(2), f=np.zeros(2),
                       w=ln.Weights.constant(1.0, 3), gamma=1.0)

    def test_gradient(self, tiny):
        p, K, f, w = tiny
        rng = np.random.default_rng(3)
        u = rng.standard_normal(p.n)
        np.testing.assert_allclose(p.gradient(u), K.T @ (K @ u - f),
                                   rtol=0, atol=1e-12)


class TestSoftThreshold:
    def test_basic(self):
        out = ln.soft_threshold([2.0, -3.0, 0.5], [1.0, 1.0, 1.0])
        np.testing.assert_array_equal(out, [1.0, -2.0, 0.0])

    def test_zero(self):
        np.testing.assert_array_equal(ln.soft_threshold(np.zeros(3), np.ones(3)),
                                      np.zeros(3))

    def test_boundary_maps_to_zero(self):
        np.testing.assert_array_equal(ln.soft_threshold([1.0, 1.0], [1.0, 1.0]),
                                      [0.0, 0.0])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            ln.soft_threshold([1.0, 2.0], [1.0])

    def test_nonpositive_threshold(self):
        with pytest.raises(ValueError):
            ln.soft_threshold([1.0], [0.0])

    def test_prox_characterization_by_grid(self):
        # per-coordinate brute force: S_t(v) minimizes 0.5(x-v)^2 + t|x|
        rng = np.random.default_rng(7)
        for _ in range(50):
            v = float(rng.uniform(-5, 5))
            t = float(rng.uniform(0.1, 3.0))
            grid = np.linspace(v - 2 * t - 1, v + 2 * t + 1, 40001)
            vals = 0.5 * (grid - v) ** 2 + t * np.abs(grid)
            best = grid[np.argmin(vals)]
            s = ln.soft_threshold([v], [t])[0]
            assert abs(s - best) <= 2 * (grid[1] - grid[0])

    @given(
        arrays(np.float64, 6, elements=st.floats(-1e6, 1e6)),
        arrays(np.float64, 6, elements=st.floats(-1e6, 1e6)),
        arrays(np.float64, 6, elements=st.floats(1e-3, 1e3)),
    )
    @settings(max_examples=200, deadline=None)
    def test_nonexpansive(self, a, b, t):
        sa = ln.soft_threshold(a, t)
        sb = ln.soft_threshold(b, t)
        assert np.linalg.norm(sa - sb) <= np.linalg.norm(a - b) * (1 + 1e-12) + 1e-12

    @given(
        arrays(np.float64, 5, elements=st.floats(-100, 100)),
        arrays(np.float64, 5, elements=st.floats(1e-2, 10)),
    )
    @settings(max_examples=200, deadline=None)
    def test_shrinks_toward_zero_and_keeps_sign(self, u, t):
        s = ln.soft_threshold(u, t)
        assert np.all(np.abs(s) <= np.maximum(np.abs(u) - t, 0.0) + 1e-15)
        assert np.all((s == 0) | (np.sign(s) == np.sign(u)))


class TestObjective:
    def test_zero_everything(self):
        p = ln.Problem(K=ln.identity(2), f=np.zeros(2),
                       w=ln.Weights.constant(1.0, 2), gamma=1.0)
        assert ln.objective(p, np.zeros(2)) == 0.0

    def test_scalar_arithmetic(self):
        p = ln.Problem(K=ln.identity(1), f=np.array([2.0]),
                       w=ln.Weights.constant(1.0, 1), gamma=1.0)
        assert ln.objective(p, np.array([1.0])) == pytest.approx(1.5, abs=1e-15)

    def test_matches_oracle_minimum(self, tiny):
        p, K, f, w = tiny
        ubar = oracle_minimize(K, f, w)
        rep = ln.solve_ssn(p)
        assert rep.converged
        assert ln.objective(p, rep.solution) == pytest.approx(
            oracle_objective(K, f, w, ubar), abs=1e-8)


class TestOptimalityResidual:
    def test_zero_at_oracle_solution(self, tiny):
        p, K, f, w = tiny
        ubar = oracle_minimize(K, f, w)
        assert np.linalg.norm(ln.optimality_residual(p, ubar)) <= 1e-12

    def test_identity_zero_data_formula(self):
        gamma = 0.7
        p = ln.Problem(K=ln.identity(4), f=np.zeros(4),
                       w=ln.Weights.constant(0.3, 4), gamma=gamma)
        rng = np.random.default_rng(9)
        u = rng.standard_normal(4)
        expected = u - ln.soft_threshold((1 - gamma) * u, gamma * 0.3 * np.ones(4))
        np.testing.assert_allclose(ln.optimality_residual(p, u), expected,
                                   rtol=0, atol=1e-14)

    def test_scalar_shrinkage_solution(self):
        # K = I, gamma = 1 collapses the fixed point to one shrinkage of f
        p = ln.Problem(K=ln.identity(1), f=np.array([10.0]),
                       w=ln.Weights.constant(1.0, 1), gamma=1.0)
        assert np.linalg.norm(ln.optimality_residual(p, np.array([9.0]))) == 0.0

    def test_gamma_independence_of_solution(self, tiny):
        p, K, f, w = tiny
        ubar = oracle_minimize(K, f, w)
        base = 1.0 / np.linalg.norm(K.T @ K, 2)
        for factor in (0.1, 1.0, 10.0):
            q = ln.Problem(K=p.K, f=f, w=p.w, gamma=factor * base)
            assert np.linalg.norm(ln.optimality_residual(q, ubar)) <= 1e-10


class TestActiveInactive:
    def test_all_inactive_trivially(self):
        p = ln.Problem(K=ln.identity(3), f=np.zeros(3),
                       w=ln.Weights.constant(1.0, 3), gamma=1.0)
        sets = ln.active_inactive(p, np.zeros(3))
        assert sets.size == 0
        np.testing.assert_array_equal(sets.inactive, [0, 1, 2])

    def test_direct_comparison(self):
        p = ln.Problem(K=ln.identity(2), f=np.array([3.0, 0.5]),
                       w=ln.Weights.constant(1.0, 2), gamma=1.0)
        sets = ln.active_inactive(p, np.zeros(2))
        np.testing.assert_array_equal(sets.plus, [0])
        np.testing.assert_array_equal(sets.minus, [])
        np.testing.assert_array_equal(sets.inactive, [1])

    def test_boundary_is_inactive(self):
        # v = f exactly equals the threshold at coordinate 0
        p = ln.Problem(K=ln.identity(2), f=np.array([1.0, -1.0]),
                       w=ln.Weights.constant(1.0, 2), gamma=1.0)
        sets = ln.active_inactive(p, np.zeros(2))
        assert sets.size == 0

    def test_negative_side(self):
        p = ln.Problem(K=ln.identity(2), f=np.array([-4.0, 0.0]),
                       w=ln.Weights.constant(1.0, 2), gamma=1.0)
        sets = ln.active_inactive(p, np.zeros(2))
        np.testing.assert_array_equal(sets.minus, [0])


class TestActiveSet:
    def test_sign_validation(self):
        with pytest.raises(ValueError):
            ln.ActiveSet(np.array([0, 2, -1]))

    def test_from_indices(self):
        sets = ln.ActiveSet.from_indices([0, 3], [1], 5)
        np.testing.assert_array_equal(sets.signs, [1, -1, 0, 1, 0])
        np.testing.assert_array_equal(sets.active, [0, 1, 3])
        assert sets.size == 3

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            ln.ActiveSet.from_indices([0], [0], 3)

    def test_same_signs(self):
        a = ln.ActiveSet(np.array([1, 0, -1]))
        b = ln.ActiveSet.from_indices([0], [2], 3)
        assert a.same_signs(b)
        assert not a.same_signs(ln.ActiveSet(np.zeros(3, dtype=int)))


class TestThresholdMargin:
    def test_positive_off_boundary(self, tiny):
        p, K, f, w = tiny
        ubar = oracle_minimize(K, f, w)
        assert ln.threshold_margin(p, ubar) > 0

    def test_zero_on_constructed_boundary(self):
        p = ln.Problem(K=ln.identity(2), f=np.array([1.0, 0.2]),
                       w=ln.Weights.constant(1.0, 2), gamma=1.0)
        assert ln.threshold_margin(p, np.zeros(2)) == 0.0
