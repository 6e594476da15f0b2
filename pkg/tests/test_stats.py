import math

import numpy as np
import pytest

from diminish.distributions import RngStream, cdf_callable, exp1, law_sample, weibull
from diminish.errors import ConfigurationError, DomainError
from diminish.stats import (
    RunConfig,
    envelope_check,
    ks_stat,
    ks_two_sample,
    moment_estimate,
    run_experiment,
    survival_fraction,
)


class TestKsStat:
    def test_three_point_example(self):
        # one-sided gaps enumerated by hand
        assert ks_stat([0.25, 0.5, 0.75], lambda x: x) == pytest.approx(0.25, abs=1e-15)

    def test_single_point_example(self):
        assert ks_stat([0.5], lambda x: x) == pytest.approx(0.5, abs=1e-15)

    def test_self_consistency(self):
        law = weibull(2.0)
        samples = law_sample(law, RngStream(51, 0), 100_000)
        assert ks_stat(samples, cdf_callable(law)) <= 0.01

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            ks_stat([], lambda x: x)

    def test_two_sample(self):
        assert ks_two_sample([1, 2, 3], [1, 2, 3]) == 0.0
        assert ks_two_sample([0, 1], [5, 6]) == 1.0


class TestMoments:
    def test_examples(self):
        mean, _ = moment_estimate([1.0, 2.0, 3.0], 1.0)
        assert mean == pytest.approx(2.0)
        mean2, _ = moment_estimate([1.0, 2.0, 3.0], 2.0)
        assert mean2 == pytest.approx(14.0 / 3.0)

    def test_weibull_moment(self):
        samples = law_sample(weibull(2.0), RngStream(52, 0), 100_000)
        mean, se = moment_estimate(samples, 1.0)
        assert abs(mean - 0.5 * math.gamma(0.5)) <= 3 * se

    def test_errors(self):
        with pytest.raises(DomainError):
            moment_estimate([], 1.0)
        with pytest.raises(DomainError):
            moment_estimate([1.0], 0.0)


class TestEnvelope:
    def test_degenerate_grid_passes(self):
        rep = envelope_check([0.5, 1.5], lambda x: 0.0, lambda x: 1.0, [1.0])
        assert rep.passed

    def test_malformed_rejected(self):
        with pytest.raises(ConfigurationError):
            envelope_check([1.0], lambda x: 1.0, lambda x: 0.0, [1.0])

    def test_detects_violations(self):
        values = law_sample(exp1(), RngStream(53, 0), 20_000)
        rep = envelope_check(
            values,
            lambda x: math.exp(-x),
            lambda x: math.exp(-x),
            [0.5, 1.0],
            tol=0.02,
        )
        assert rep.passed  # exponential survival matches its own law
        shifted = values + 0.5
        rep2 = envelope_check(
            shifted, lambda x: math.exp(-x), lambda x: math.exp(-x), [0.5, 1.0], tol=0.02
        )
        assert not rep2.passed and rep2.violations

    def test_survival_fraction(self):
        assert survival_fraction([1.0, 2.0, 3.0], [1.5]) == pytest.approx([2 / 3])

    def test_heptagon_rate_envelope_upper_bound(self):
        # scaled heptagon excesses stay under the analytic survival envelope
        from diminish.polygon import bound_constants, run_polygon_batch

        bc = bound_constants(7)
        n = 400
        res = run_polygon_batch(7, n, 500, seed=58)
        scaled = math.sqrt(bc.c3 * n) * (res.max_height - math.cos(math.pi / 7))
        rep = envelope_check(
            scaled,
            lower=lambda x: 0.0,
            upper=bc.rate_envelope_upper,
            grid=[0.05, 0.1, 0.2, 0.5, 1.0],
            tol=0.03,
        )
        assert rep.passed


class TestRunConfig:
    def test_validation_messages_name_keys(self):
        with pytest.raises(ConfigurationError, match=r"c must lie in \[0, 1\]"):
            RunConfig(process="interval", n=10, replicas=1, seed=0, c=1.5).validate()
        with pytest.raises(ConfigurationError, match="process"):
            RunConfig(process="disk", n=10, replicas=1, seed=0).validate()
        with pytest.raises(ConfigurationError, match="k must be >= 5"):
            RunConfig(process="polygon", n=10, replicas=1, seed=0, k=4).validate()


class TestRunExperiment:
    def test_deterministic(self):
        cfg = RunConfig(process="interval", n=200, replicas=20, seed=54)
        a = run_experiment(cfg).values()
        b = run_experiment(cfg).values()
        assert np.array_equal(a, b)

    def test_sample_metadata(self):
        cfg = RunConfig(process="polygon", k=7, n=50, replicas=5, seed=55)
        res = run_experiment(cfg)
        assert len(res.samples) == 5
        first = res.samples[0]
        assert first.replica == 0 and first.n == 50 and first.process == "polygon"
        assert first.exponent == 0.5
        assert res.values().min() >= 0.0

    def test_even_polygon_exponent(self):
        cfg = RunConfig(process="polygon", k=8, n=50, replicas=3, seed=56)
        assert run_experiment(cfg).samples[0].exponent == 1.0

    def test_simplex_scaling(self):
        cfg = RunConfig(process="simplex", d=2, n=100, replicas=4, seed=57)
        res = run_experiment(cfg)
        heights = res.extras["heights"]
        expected = (3 * 100) ** 0.5 / 0.5 * (heights - 0.5)
        assert np.allclose(res.values(), expected, atol=1e-12)
