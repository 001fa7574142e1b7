import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swarmwalk.graph import build_swarm_graph
from swarmwalk.objectives import SearchDomain, make_objective
from swarmwalk.rwpso import (
    RwpsoConfig,
    compute_delta,
    displacement_vector,
    gaussian_term,
    init_state,
    resolve_sigma,
    rwpso_run,
    rwpso_step,
    select_target,
    update_position,
)
from swarmwalk.walk import constrained_biased_walk, walk_expectation

# hop distribution out of the first particle of the five-point swarm used
# as the graph-module oracle
FIVE_POINT_ROW = np.array([0.056, 0.236, 0.124, 0.260, 0.324])


def config(**kwargs) -> RwpsoConfig:
    defaults = dict(swarm_size=4, dim=2, max_iterations=10, seed=0)
    defaults.update(kwargs)
    return RwpsoConfig(**defaults)


class TestSelectTarget:
    def test_small_draw_picks_minimum_holder(self):
        assert select_target(FIVE_POINT_ROW, 0.03) == 0

    def test_large_draw_picks_maximum_holder(self):
        assert select_target(FIVE_POINT_ROW, 0.5) == 4

    def test_uniform_row_ties_break_low(self):
        row = np.full(5, 0.2)
        assert select_target(row, 0.1) == 0
        assert select_target(row, 0.9) == 0

    def test_empty_row(self):
        with pytest.raises(ValueError):
            select_target(np.array([]), 0.5)

    @given(
        st.lists(st.floats(0.01, 10.0), min_size=2, max_size=30),
        st.floats(0.0, 0.999),
        st.floats(0.1, 100.0),
    )
    @settings(max_examples=100, deadline=None)
    def test_invariant_under_positive_rescaling(self, weights, r, scale):
        row = np.array(weights) / np.sum(weights)
        rescaled = row * scale
        rescaled = rescaled / rescaled.sum()
        assert select_target(row, r) == select_target(rescaled, r)


class TestComputeDelta:
    def test_zero_displacement(self):
        assert compute_delta(0.0, 10) == 0.5

    def test_full_horizon_displacements(self):
        assert compute_delta(10.0, 10) == 0.0
        assert compute_delta(-10.0, 10) == 1.0

    def test_zero_horizon(self):
        with pytest.raises(ValueError):
            compute_delta(1.0, 0)

    @given(st.floats(-1e6, 1e6), st.integers(1, 10_000))
    @settings(max_examples=200, deadline=None)
    def test_mirror_identity(self, d, n):
        assert compute_delta(d, n) + compute_delta(-d, n) == pytest.approx(1.0, abs=1e-9)


class TestDisplacementVector:
    def test_toward_self_is_zero(self):
        cfg = config(walk_horizon=10, displacement_mode="toward_target")
        p = np.array([1.5, -2.0])
        np.testing.assert_array_equal(displacement_vector(p, p, cfg), [0.0, 0.0])

    def test_toward_target_drift(self):
        cfg = config(walk_horizon=10, displacement_mode="toward_target")
        k = displacement_vector([0.0, 0.0], [10.0, -10.0], cfg)
        np.testing.assert_array_equal(k, [1.0, -1.0])

    def test_step_split_mode_adds_the_split_probability(self):
        cfg = config(walk_horizon=10, displacement_mode="step_split")
        k = displacement_vector([0.0, 0.0], [10.0, -10.0], cfg)
        np.testing.assert_array_equal(k, [0.0, 1.0])

    def test_dimension_mismatch(self):
        cfg = config()
        with pytest.raises(ValueError):
            displacement_vector([0.0, 0.0], [1.0, 2.0, 3.0], cfg)


class TestWalkOracle:
    """The movement term is the expected drift of the corresponding walk."""

    @given(st.integers(1, 50), st.floats(-1.0, 1.0))
    @settings(max_examples=100, deadline=None)
    def test_drift_equals_walk_expectation(self, n, ratio):
        d = ratio * n  # keep the step split a valid probability
        delta = compute_delta(d, n)
        cfg = config(dim=1, walk_horizon=n, displacement_mode="toward_target")
        k = displacement_vector([0.0], [d], cfg)
        assert walk_expectation(n, 1.0 - delta) == pytest.approx(n * k[0], abs=1e-9)

    def test_monte_carlo_walk_reaches_displacement(self):
        n, d = 20, 7.0
        delta = compute_delta(d, n)
        rng = np.random.default_rng(123)
        finals = np.array([
            constrained_biased_walk(n, 1.0 - delta, 1.0, 1.0, rng)
            for _ in range(10_000)
        ])
        se = finals.std(ddof=1) / np.sqrt(len(finals))
        assert abs(finals.mean() - d) <= 4.0 * se


class TestGaussianTerm:
    def test_tiny_sigma_returns_mu(self):
        cfg = config(dim=6, gaussian_mu=1.25, gaussian_sigma_mode="fixed",
                     gaussian_sigma=1e-12)
        dom = SearchDomain.uniform(6, -10, 10, -1, 1)
        g = gaussian_term(cfg, dom, np.random.default_rng(0))
        np.testing.assert_allclose(g, np.full(6, 1.25), atol=1e-6)

    def test_standard_moments(self):
        cfg = config(dim=1, gaussian_sigma_mode="fixed", gaussian_sigma=1.0)
        dom = SearchDomain.uniform(1, -10, 10, -1, 1)
        rng = np.random.default_rng(1)
        draws = np.array([gaussian_term(cfg, dom, rng)[0] for _ in range(100_000)])
        assert draws.mean() == pytest.approx(0.0, abs=0.02)
        assert draws.std() == pytest.approx(1.0, abs=0.02)

    def test_range_scaled_sigma(self):
        cfg = config(dim=2, gaussian_sigma_mode="range_scaled", gaussian_sigma=0.05)
        dom = SearchDomain(np.array([0.0, 0.0]), np.array([10.0, 40.0]),
                           np.array([1.0, 1.0]), np.array([2.0, 2.0]))
        np.testing.assert_allclose(resolve_sigma(cfg, dom), [0.5, 2.0])

    def test_displacement_scaled_is_isotropic_mean_gap(self):
        cfg = config(dim=3, gaussian_sigma_mode="displacement_scaled",
                     gaussian_sigma=0.5)
        dom = SearchDomain.uniform(3, -10, 10, -1, 1)
        sigma = resolve_sigma(cfg, dom, np.array([3.0, 0.0, -3.0]))
        np.testing.assert_allclose(sigma, np.full(3, 1.0))

    def test_displacement_scaled_requires_displacement(self):
        cfg = config(gaussian_sigma_mode="displacement_scaled")
        dom = SearchDomain.uniform(2, -10, 10, -1, 1)
        with pytest.raises(ValueError):
            gaussian_term(cfg, dom, np.random.default_rng(0))

    def test_invalid_sigma_rejected_at_config(self):
        with pytest.raises(ValueError):
            config(gaussian_sigma=0.0)
        with pytest.raises(ValueError):
            config(gaussian_sigma_mode="lognormal")


class TestUpdatePosition:
    DOMAIN = SearchDomain.uniform(2, -10.0, 10.0, -1.0, 1.0)

    def test_identity(self):
        p = np.array([2.0, -3.0])
        np.testing.assert_array_equal(
            update_position(p, np.zeros(2), np.zeros(2), self.DOMAIN), p
        )

    def test_sum_of_terms(self):
        got = update_position([0.0, 0.0], [1.0, -1.0], [0.5, 0.5], self.DOMAIN)
        np.testing.assert_array_equal(got, [1.5, -0.5])

    def test_clamps_overshoot(self):
        got = update_position([9.0, 9.0], [5.0, 5.0], [0.0, 0.0], self.DOMAIN)
        np.testing.assert_array_equal(got, [10.0, 10.0])


class TestStep:
    def test_swarm_at_optimum_is_a_fixed_point(self):
        obj = make_objective("sphere", 2, lower=-10, upper=10,
                             init_lower=0, init_upper=0)
        cfg = config(swarm_size=2, dim=2, displacement_mode="toward_target",
                     gaussian_sigma_mode="fixed", gaussian_sigma=1e-12)
        rng = np.random.default_rng(0)
        state = init_state(obj, cfg, rng)
        new = rwpso_step(state, obj, cfg, rng)
        np.testing.assert_allclose(new.positions, state.positions, atol=1e-6)

    def test_same_seed_same_successor(self):
        obj = make_objective("rastrigin", 3)
        cfg = config(swarm_size=6, dim=3, seed=5)
        s1 = rwpso_step(init_state(obj, cfg, np.random.default_rng(5)),
                        obj, cfg, np.random.default_rng(77))
        s2 = rwpso_step(init_state(obj, cfg, np.random.default_rng(5)),
                        obj, cfg, np.random.default_rng(77))
        np.testing.assert_array_equal(s1.positions, s2.positions)
        np.testing.assert_array_equal(s1.fitnesses, s2.fitnesses)

    def test_step_matches_single_particle_operations(self):
        # the batched update must agree with the audited per-particle ops
        obj = make_objective("sphere", 4)
        cfg = config(swarm_size=7, dim=4)
        state = init_state(obj, cfg, np.random.default_rng(3))
        graph = build_swarm_graph(state.positions, state.fitnesses, obj.sense)
        rows = graph.prob_rows
        r = np.random.default_rng(9).random(cfg.swarm_size)
        expected_targets = [select_target(rows[j], r[j]) for j in range(cfg.swarm_size)]
        batched = np.where(r < rows.min(axis=1),
                           rows.argmin(axis=1), rows.argmax(axis=1))
        np.testing.assert_array_equal(batched, expected_targets)
        for j, t in enumerate(expected_targets):
            k = displacement_vector(state.positions[j], state.positions[t], cfg)
            gap = state.positions[t] - state.positions[j]
            np.testing.assert_allclose(k, gap / cfg.walk_horizon)

    @given(st.integers(0, 2**32 - 1), st.integers(2, 10), st.integers(1, 5))
    @settings(max_examples=30, deadline=None)
    def test_positions_stay_in_domain(self, seed, n, dim):
        obj = make_objective("sphere", dim)
        cfg = config(swarm_size=n, dim=dim, seed=seed)
        rng = np.random.default_rng(seed)
        state = init_state(obj, cfg, rng)
        for _ in range(3):
            state = rwpso_step(state, obj, cfg, rng)
            assert np.all(state.positions >= obj.domain.lower)
            assert np.all(state.positions <= obj.domain.upper)


class TestDriftTelescoping:
    def test_constant_drift_lands_on_frozen_target(self):
        n = 17
        target = np.array([4.0, -3.0, 0.5])
        start = np.array([-2.0, 5.0, 1.5])
        dom = SearchDomain.uniform(3, -100.0, 100.0, -1.0, 1.0)
        cfg = config(dim=3, walk_horizon=n, displacement_mode="toward_target",
                     gaussian_sigma_mode="fixed", gaussian_sigma=1e-12)
        rng = np.random.default_rng(2)
        k = displacement_vector(start, target, cfg)
        p = start
        for _ in range(n):
            p = update_position(p, k, gaussian_term(cfg, dom, rng), dom)
        np.testing.assert_allclose(p, target, atol=1e-6)


class TestRun:
    def test_single_iteration_trace(self):
        obj = make_objective("sphere", 2)
        result = rwpso_run(obj, config(swarm_size=5, dim=2, max_iterations=1))
        assert result.iterations_used == 1
        assert len(result.trace) == 1

    def test_without_threshold_runs_full_budget(self):
        obj = make_objective("sphere", 2)
        result = rwpso_run(obj, config(swarm_size=5, dim=2, max_iterations=25))
        assert result.iterations_used == 25
        assert len(result.trace) == 25

    def test_trace_is_monotone_non_increasing(self):
        obj = make_objective("rastrigin", 4)
        result = rwpso_run(obj, config(swarm_size=8, dim=4, max_iterations=60))
        assert np.all(np.diff(result.trace) <= 0.0)

    def test_threshold_stops_early(self):
        obj = make_objective("sphere", 2)
        cfg = config(swarm_size=10, dim=2, max_iterations=2000,
                     fitness_threshold=1e-2, seed=3)
        result = rwpso_run(obj, cfg)
        assert result.best_fitness <= 1e-2
        assert result.iterations_used < 2000

    def test_bitwise_deterministic(self):
        obj = make_objective("rastrigin", 3)
        cfg = config(swarm_size=6, dim=3, max_iterations=40, seed=11)
        a = rwpso_run(obj, cfg)
        b = rwpso_run(obj, cfg)
        assert a.to_dict() == b.to_dict()

    def test_dim_mismatch_rejected(self):
        obj = make_objective("sphere", 3)
        with pytest.raises(ValueError):
            rwpso_run(obj, config(swarm_size=5, dim=2))

    def test_best_position_matches_best_fitness(self):
        obj = make_objective("sphere", 3)
        result = rwpso_run(obj, config(swarm_size=6, dim=3, max_iterations=30))
        assert obj.evaluate(result.best_position) == pytest.approx(result.best_fitness)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            config(swarm_size=1)
        with pytest.raises(ValueError):
            config(walk_horizon=0)
        with pytest.raises(ValueError):
            config(displacement_mode="teleport")
        with pytest.raises(ValueError):
            config(boundary_policy="reflect")
