# test_harness.py
# Tests experiment configuration, Monte Carlo aggregation and schedule resolution
from dataclasses import replace

import numpy as np
import pytest

from hpzo.core.oracles import PROBLEM_REGISTRY, Regime, build_problem
from hpzo.errors import HarnessError, InvalidInputError
from hpzo.harness import ExperimentConfig, load_experiment_config, resolve_schedule, run_monte_carlo
from hpzo.harness.monte_carlo import order_statistic


def _config(**changes):
    payload = {
        "problem": {"name": "quad1d"},
        "regime": "sc",
        "epsilon": 1.0,
        "delta": 0.1,
        "trials": 3,
        "master_seed": 42,
        "overrides": {"T": 2, "alpha": 1e-3},
        "parallelism": 1,
    }
    payload.update(changes)
    return ExperimentConfig.model_validate(payload)


class TestExperimentConfig:
    def test_load(self, experiment_file):
        path = experiment_file({
            "problem": {"name": "quadratic", "params": {"d": 4}},
            "regime": "nc",
            "epsilon": 0.1,
            "delta": 0.05,
            "trials": 10,
        })
        config = load_experiment_config(path)
        assert config.regime is Regime.NONCONVEX
        assert config.problem.params == {"d": 4}
        assert config.output.formats == ["json"]
        assert config.parallelism >= 1

    @pytest.mark.parametrize(
        "changes",
        [
            {"unexpected": 1},
            {"overrides": {}},
            {"trials": 0},
            {"delta": 1.0},
            {"epsilon": 0.0},
            {"regime": "concave"},
            {"output": {"formats": ["xml"]}},
            {"overrides": {"T": 0}},
        ],
    )
    def test_invalid_files(self, experiment_file, changes):
        payload = {"problem": {"name": "quad1d"}, "regime": "sc", "epsilon": 0.1, "delta": 0.1, "trials": 5}
        payload.update(changes)
        with pytest.raises(InvalidInputError):
            load_experiment_config(experiment_file(payload))

    def test_malformed_yaml(self, tmp_path):
        path = tmp_path / "broken.yml"
        path.write_text("problem: [unclosed\n")
        with pytest.raises(InvalidInputError):
            load_experiment_config(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(InvalidInputError):
            load_experiment_config(str(tmp_path / "absent.yml"))


class TestOrderStatistic:
    def test_ranks(self):
        values = np.array([1.0, 2.0, 3.0, 4.0])
        assert order_statistic(values, 0.25) == 1.0
        assert order_statistic(values, 0.5) == 2.0
        assert order_statistic(values, 0.9) == 4.0
        assert order_statistic(values, 1.0) == 4.0

    def test_empty(self):
        assert order_statistic(np.array([]), 0.9) is None


class TestResolveSchedule:
    def test_regime_mismatch(self):
        problem = build_problem("cosine", {"d": 3, "amplitude": 1.5})
        with pytest.raises(InvalidInputError):
            resolve_schedule(problem, Regime.STRONGLY_CONVEX, 0.1, 0.1)
        with pytest.raises(InvalidInputError):
            resolve_schedule(problem, Regime.CONVEX, 0.1, 0.1)

    def test_unknown_minimum(self):
        problem = build_problem("logsumexp", {"A": [[1.0, 0.0], [0.0, 1.0]]})
        with pytest.raises(InvalidInputError):
            resolve_schedule(problem, Regime.NONCONVEX, 0.1, 0.1)

    def test_conditional_radius(self):
        problem = build_problem("logsumexp", {"d": 2, "x0": [1.0, -1.0]})
        with pytest.raises(InvalidInputError):
            resolve_schedule(problem, Regime.CONVEX, 0.5, 0.1)
        schedule, label = resolve_schedule(problem, Regime.CONVEX, 0.5, 0.1, radius_override=3.0)
        assert label == "conditional"
        assert schedule.terms["R_eps"] == 3.0

    def test_exact_radius(self):
        problem = build_problem("singular_quadratic", {"eigenvalues": [0.0, 1.0], "x0": [1.0, 1.0]})
        schedule, label = resolve_schedule(problem, Regime.CONVEX, 0.5, 0.1)
        assert label == "exact"
        assert schedule.regime is Regime.CONVEX

    def test_nonconvex_accepts_any_problem(self):
        problem = build_problem("quadratic", {"d": 2})
        schedule, _ = resolve_schedule(problem, Regime.NONCONVEX, 0.5, 0.1)
        assert schedule.terms["Delta0"] == pytest.approx(problem.initial_gap)


class TestRunMonteCarlo:
    def test_one_dimensional_trial(self):
        summary = run_monte_carlo(_config(trials=1))
        trial = summary.trial_results[0]
        assert trial.final_quantity == pytest.approx(0.5 * 0.5625**2, rel=1e-9)
        assert trial.queries == 4
        assert summary.total_queries == 4
        assert summary.T == 2 and summary.alpha == 1e-3
        assert summary.overrides_applied
        assert summary.certified_quantity == "final_gap"

    def test_query_accounting(self):
        summary = run_monte_carlo(_config(trials=5, overrides={"T": 7, "alpha": 1e-3}))
        assert summary.total_queries == 5 * 2 * 7
        assert summary.failed_runs == 0
        assert summary.pathwise_violations == 0

    def test_reproducible(self):
        first = run_monte_carlo(_config(trials=4, overrides={"T": 30, "alpha": 1e-2}, problem={"name": "quadratic", "params": {"d": 3}}))
        second = run_monte_carlo(_config(trials=4, overrides={"T": 30, "alpha": 1e-2}, problem={"name": "quadratic", "params": {"d": 3}}))
        assert first.model_dump(exclude={"wall_time_seconds"}) == second.model_dump(exclude={"wall_time_seconds"})

    def test_parallel_matches_serial(self):
        base = dict(trials=6, overrides={"T": 40, "alpha": 1e-2}, problem={"name": "quadratic", "params": {"d": 4}})
        serial = run_monte_carlo(_config(parallelism=1, **base))
        parallel = run_monte_carlo(_config(parallelism=2, **base))
        assert serial.model_dump(exclude={"wall_time_seconds"}) == parallel.model_dump(exclude={"wall_time_seconds"})

    def test_quantiles_and_domination(self):
        config = _config(
            problem={"name": "quadratic", "params": {"d": 5}}, regime="nc", epsilon=0.5, delta=0.1,
            trials=40, overrides=None,
        )
        summary = run_monte_carlo(config)
        q = summary.quantiles
        assert q["0.5"] <= q["0.9"] <= q["1-delta"]
        assert summary.certified_quantity == "average_grad_norm_sq"
        assert summary.bound_label == "exact"
        assert summary.dominated is True
        assert summary.theory_bound <= 0.5 * (1 + 1e-9)
        assert summary.assertion_passed
        assert set(summary.event_failure_rates) == set(summary.event_delta_shares)
        assert "alpha" not in summary.event_failure_rates

    def test_alpha_override_far_above_schedule(self):
        problem = build_problem("quadratic", {"d": 3})
        schedule, _ = resolve_schedule(problem, Regime.NONCONVEX, 0.5, 0.1)
        config = _config(
            problem={"name": "quadratic", "params": {"d": 3}}, regime="nc", epsilon=0.5,
            trials=5, overrides={"alpha": 100 * schedule.alpha},
        )
        summary = run_monte_carlo(config)
        assert summary.T == schedule.T
        assert summary.alpha == pytest.approx(100 * schedule.alpha)
        assert summary.failed_runs == 0

    def test_conditional_label(self):
        config = _config(
            problem={"name": "logsumexp", "params": {"d": 2, "x0": [1.0, -1.0]}}, regime="cvx",
            epsilon=0.5, trials=3, overrides={"T": 50}, level_radius=3.0,
        )
        summary = run_monte_carlo(config)
        assert summary.bound_label in ("conditional", "unavailable")
        assert summary.schedule.terms["R_eps"] == 3.0

    def test_stationary_start_has_nothing_to_run(self):
        config = _config(
            problem={"name": "quadratic", "params": {"d": 2, "x0": [0.0, 0.0]}},
            regime="nc", epsilon=0.5, overrides=None,
        )
        with pytest.raises(HarnessError):
            run_monte_carlo(config)

    def test_all_trials_overflow(self):
        config = _config(
            problem={"name": "quadratic", "params": {"d": 3}}, regime="cvx",
            trials=4, overrides={"T": 5, "alpha": 1e-3}, L_used=1e-300,
        )
        with pytest.raises(HarnessError):
            run_monte_carlo(config)

    def test_oracle_bugs_are_not_failed_runs(self, monkeypatch):
        def broken_quad1d(params):
            def gradient(x):
                raise RuntimeError("gradient oracle broke")

            return replace(PROBLEM_REGISTRY["quad1d"](params), gradient=gradient)

        monkeypatch.setitem(PROBLEM_REGISTRY, "broken_quad1d", broken_quad1d)
        with pytest.raises(RuntimeError, match="gradient oracle broke"):
            run_monte_carlo(_config(problem={"name": "broken_quad1d"}))

    def test_strongly_convex_events_carry_alpha(self):
        summary = run_monte_carlo(_config(trials=3, overrides={"T": 20, "alpha": 1e-3}))
        assert "alpha" in summary.event_failure_rates
        assert summary.event_delta_shares["rho1"] == pytest.approx(0.1 / 3)
        assert all(trial.events for trial in summary.trial_results)
