# test_theory_events.py
# Tests the probabilistic event checks and the pathwise per-step inequalities
import pytest

from hpzo.core.oracles import build_problem
from hpzo.core.optimizer import RunParams, run_trajectory
from hpzo.core.sampling import SeedStream
from hpzo.core.theory import BoundInputs, check_events, event_shares, pathwise_checks
from hpzo.errors import InvalidInputError
from hpzo.harness.lemma_checks import events_battery

from .conftest import TEST_SIGMA

SC_ONLY_CHECKS = {"strongly_convex_contraction", "accumulated_contraction"}


def _run(problem, T, alpha=1e-2, delta=0.1, seed=5, stream=0):
    params = RunParams(
        T=T, alpha=alpha, delta=delta, epsilon=1.0, L_used=problem.smoothness_L,
        stream=SeedStream(seed, stream),
    )
    return run_trajectory(problem, params)


def _inputs(problem, T, alpha=1e-2, delta=0.1, with_mu=True):
    return BoundInputs(
        d=problem.d, L=problem.smoothness_L, alpha=alpha, T=T, delta=delta,
        Delta0=problem.initial_gap, mu=problem.strong_convexity_mu if with_mu else None,
    )


class TestCheckEvents:
    def test_one_dimension_projection_events_hold(self):
        problem = build_problem("quad1d")
        report = check_events(_run(problem, 50), _inputs(problem, 50))
        assert report.holds_rho1
        assert report.holds_rho2
        assert report.margins["rho1"] > 0

    def test_length_mismatch(self):
        problem = build_problem("quadratic", {"d": 3})
        with pytest.raises(InvalidInputError):
            check_events(_run(problem, 20), _inputs(problem, 21))

    def test_margins_match_flags(self):
        problem = build_problem("anisotropic_quadratic", {"d": 5, "L": 1.0, "mu": 0.2})
        report = check_events(_run(problem, 300), _inputs(problem, 300))
        flags = {
            "rho1": report.holds_rho1,
            "rho2": report.holds_rho2,
            "alpha": report.holds_alpha,
            "alpha_cvx": report.holds_alpha_cvx,
            "u_sum": report.holds_u_sum,
            "weighted": report.holds_weighted,
        }
        for name, holds in flags.items():
            assert holds == (report.margins[name] >= 0), f"Flag and margin disagree for {name}"
        assert report.delta_share == pytest.approx(0.1 / 3.0)

    def test_single_step_suffix_event(self):
        problem = build_problem("quadratic", {"d": 4})
        report = check_events(_run(problem, 1), _inputs(problem, 1))
        assert report.margins["rho2"] == 0.0
        assert report.holds_rho2

    def test_without_mu(self):
        problem = build_problem("cosine", {"d": 4, "amplitude": 1.5})
        report = check_events(_run(problem, 100), _inputs(problem, 100, with_mu=False))
        assert report.holds_alpha is None
        assert "alpha" not in report.margins
        assert "alpha" not in report.failed_events()
        assert report.delta_share == pytest.approx(0.05)

    def test_small_alpha_accumulation_holds(self):
        problem = build_problem("quadratic", {"d": 10})
        report = check_events(_run(problem, 200, alpha=1e-4), _inputs(problem, 200, alpha=1e-4))
        assert report.holds_alpha_cvx
        assert report.holds_u_sum


class TestPathwiseChecks:
    @pytest.mark.parametrize(
        "name,params",
        [
            ("quadratic", {"d": 5}),
            ("anisotropic_quadratic", {"d": 6, "L": 2.0, "mu": 0.1}),
            ("singular_quadratic", {"eigenvalues": [0.0, 0.0, 1.0]}),
            ("logsumexp", {"d": 3}),
            ("cosine", {"d": 5, "amplitude": 1.5}),
        ],
    )
    @pytest.mark.parametrize("stream", [0, 1, 2])
    def test_no_violations(self, name, params, stream):
        problem = build_problem(name, params)
        trajectory = _run(problem, 150, alpha=0.05, stream=stream)
        report = pathwise_checks(trajectory, problem)
        assert report.steps_checked == 150
        assert report.total_violations == 0, report.violations

    def test_strongly_convex_checks_only_for_strongly_convex_problems(self):
        sc = build_problem("quadratic", {"d": 3})
        nc = build_problem("cosine", {"d": 3, "amplitude": 1.5})
        assert SC_ONLY_CHECKS <= set(pathwise_checks(_run(sc, 20), sc).violations)
        assert not SC_ONLY_CHECKS & set(pathwise_checks(_run(nc, 20), nc).violations)


class TestEventShares:
    def test_strongly_convex_split(self):
        shares = event_shares(0.3, strongly_convex=True)
        assert shares["rho1"] == pytest.approx(0.1)
        assert shares["alpha"] == pytest.approx(0.1)
        assert shares["u_sum"] == pytest.approx(0.15)

    def test_plain_split(self):
        shares = event_shares(0.3, strongly_convex=False)
        assert "alpha" not in shares
        assert shares["rho1"] == pytest.approx(0.15)
        assert set(shares) == {"rho1", "rho2", "alpha_cvx", "u_sum", "weighted"}


class TestEventsBattery:
    def test_failure_rates_within_shares(self):
        battery = events_battery(seed=9, trials=50, dims=(2,), T=100, sigma=TEST_SIGMA)
        assert battery.passed, [check for check in battery.checks if not check.passed]
        assert {check.name for check in battery.checks} >= {"rho1_d2", "alpha_d2", "weighted_d2"}
