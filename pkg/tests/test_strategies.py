import math

import numpy as np
import pytest
from scipy import integrate, stats

from skirental import INFINITE
from skirental.errors import DomainError
from skirental.solver import optimal_cutoff_z
from skirental.strategies import (
    AdversaryPolicy,
    SkierPolicy,
    adversary_conditional_cdf,
    adversary_conditional_inverse_cdf,
    adversary_density,
    sample_adversary,
    sample_adversary_block,
    sample_skier,
    skier_cdf,
    skier_density,
    skier_inverse_cdf,
)

B = 10.0


@pytest.fixture
def informed():
    return SkierPolicy(B, optimal_cutoff_z(0.15))


@pytest.fixture
def classic():
    return SkierPolicy.no_information(B)


class TestSkierPolicy:
    def test_cutoff(self, informed):
        assert informed.cutoff == B * informed.z

    @pytest.mark.parametrize("z", [0.0, -1.0, math.inf])
    def test_bad_z(self, z):
        with pytest.raises(DomainError):
            SkierPolicy(B, z)

    def test_degenerate_optimal(self):
        with pytest.raises(DomainError):
            SkierPolicy.optimal(0.0)
        with pytest.raises(DomainError):
            SkierPolicy.optimal(1.0)


class TestSkierDensity:
    def test_zero_beyond_cutoff(self, classic):
        assert skier_density(classic, 12.0) == 0.0
        assert skier_density(classic, 10.0) == 0.0

    def test_at_origin(self, classic):
        assert skier_density(classic, 0.0) == pytest.approx(1 / (10 * (math.e - 1)), rel=1e-14)
        assert skier_density(classic, 0.0) == pytest.approx(0.058198, abs=1e-6)

    @pytest.mark.parametrize("alpha", [0.15, 0.3, 0.6, 0.9])
    def test_normalized(self, alpha):
        policy = SkierPolicy.optimal(alpha, B)
        mass, _ = integrate.quad(lambda x: float(skier_density(policy, x)), 0, policy.cutoff,
                                 epsabs=1e-13, epsrel=1e-13)
        assert mass == pytest.approx(1.0, abs=1e-9)

    def test_nondecreasing_then_drops(self, informed):
        xs = np.linspace(0, informed.cutoff, 1000, endpoint=False)
        values = skier_density(informed, xs)
        assert np.all(np.diff(values) >= 0)
        assert skier_density(informed, informed.cutoff) == 0.0


class TestSkierInverseCdf:
    def test_endpoints(self, informed):
        assert skier_inverse_cdf(informed, 0.0) == 0.0
        assert skier_inverse_cdf(informed, 1.0) == pytest.approx(informed.cutoff, rel=1e-15)

    def test_median_classic(self, classic):
        x = skier_inverse_cdf(classic, 0.5)
        assert x == pytest.approx(10 * math.log(1 + 0.5 * (math.e - 1)), rel=1e-14)
        mass, _ = integrate.quad(lambda t: float(skier_density(classic, t)), 0, x, epsabs=1e-13)
        assert mass == pytest.approx(0.5, abs=1e-10)

    def test_median_informed(self, informed):
        # Quadrature-verified value; frozen.
        x = skier_inverse_cdf(informed, 0.5)
        assert x == pytest.approx(3.0642448429178993, abs=1e-10)
        mass, _ = integrate.quad(lambda t: float(skier_density(informed, t)), 0, x, epsabs=1e-13)
        assert mass == pytest.approx(0.5, abs=1e-10)

    def test_round_trip(self, informed):
        u = np.linspace(0, 1, 1001)
        np.testing.assert_allclose(skier_cdf(informed, skier_inverse_cdf(informed, u)), u, atol=1e-10)

    def test_increasing(self, informed):
        u = np.linspace(0, 1, 1001)
        assert np.all(np.diff(skier_inverse_cdf(informed, u)) > 0)

    @pytest.mark.parametrize("u", [-0.1, 1.1, math.nan])
    def test_domain(self, informed, u):
        with pytest.raises(DomainError):
            skier_inverse_cdf(informed, u)


class TestSampleSkier:
    def test_support(self, informed):
        x = sample_skier(informed, np.random.default_rng(3), size=10_000)
        assert np.all((x >= 0) & (x <= informed.cutoff))

    def test_ks(self, classic):
        x = sample_skier(classic, np.random.default_rng(11), size=100_000)
        result = stats.kstest(x, lambda t: skier_cdf(classic, t))
        assert result.statistic < 0.01

    def test_deterministic(self, informed):
        a = sample_skier(informed, np.random.default_rng(5), size=100)
        b = sample_skier(informed, np.random.default_rng(5), size=100)
        np.testing.assert_array_equal(a, b)


class TestAdversary:
    def test_density_values(self):
        policy = AdversaryPolicy(0.15, B)
        assert adversary_density(policy, 0.0) == 0.0
        assert adversary_density(policy, 10.0) == pytest.approx(0.15 * 10 / ((math.e - 2) * 100), rel=1e-14)
        assert adversary_density(policy, 10.0) == pytest.approx(0.020883, abs=1e-6)

    @pytest.mark.parametrize("alpha", [0.15, 0.5, 1.0])
    def test_mass(self, alpha):
        policy = AdversaryPolicy(alpha, B)
        mass, _ = integrate.quad(lambda y: float(adversary_density(policy, y)), 0, B, epsabs=1e-13)
        assert mass == pytest.approx(alpha, abs=1e-9)
        assert mass + policy.infinite_mass == pytest.approx(1.0, abs=1e-9)

    def test_density_domain(self):
        with pytest.raises(DomainError):
            adversary_density(AdversaryPolicy(0.5, B), 10.5)

    def test_conditional_cdf(self):
        policy = AdversaryPolicy(0.15, B)
        assert adversary_conditional_cdf(policy, 0.0) == 0.0
        assert adversary_conditional_cdf(policy, B) == pytest.approx(1.0, abs=1e-15)
        g5 = adversary_conditional_cdf(policy, 5.0)
        assert g5 == pytest.approx((1 - 1.5 * math.exp(-0.5)) * math.e / (math.e - 2), rel=1e-14)
        mass, _ = integrate.quad(lambda y: float(adversary_density(policy, y)) / 0.15, 0, 5, epsabs=1e-13)
        assert g5 == pytest.approx(mass, abs=1e-10)
        assert g5 == pytest.approx(0.3413700760534188, abs=1e-12)

    def test_conditional_cdf_increasing(self):
        y = np.linspace(0, B, 2001)
        assert np.all(np.diff(adversary_conditional_cdf(AdversaryPolicy(0.3, B), y)) > 0)

    def test_inverse_round_trip(self):
        policy = AdversaryPolicy(0.4, B)
        u = np.linspace(0, 1, 1001)
        y = adversary_conditional_inverse_cdf(policy, u)
        np.testing.assert_allclose(adversary_conditional_cdf(policy, y), u, atol=1e-10)

    def test_always_infinite_without_mass(self):
        rng = np.random.default_rng(0)
        policy = AdversaryPolicy(0.0, B)
        assert all(sample_adversary(policy, rng) is INFINITE for _ in range(1000))

    def test_ks_finite_part(self):
        policy = AdversaryPolicy(1.0, B)
        rng = np.random.default_rng(21)
        finite, y = sample_adversary_block(policy, rng.random(100_000), rng.random(100_000))
        assert finite.all()
        result = stats.kstest(y, lambda t: adversary_conditional_cdf(policy, np.clip(t, 0, B)))
        assert result.statistic < 0.01

    def test_infinite_fraction(self):
        policy = AdversaryPolicy(0.15, B)
        rng = np.random.default_rng(8)
        finite, _ = sample_adversary_block(policy, rng.random(100_000), rng.random(100_000))
        assert 1 - finite.mean() == pytest.approx(0.85, abs=0.01)

    def test_scalar_sampler_matches_block(self):
        policy = AdversaryPolicy(0.5, B)
        draws = [sample_adversary(policy, np.random.default_rng(s)) for s in range(50)]
        for s, draw in enumerate(draws):
            u_atom, u_len = np.random.default_rng(s).random(2)
            finite, y = sample_adversary_block(policy, [u_atom], [u_len])
            if finite[0]:
                assert draw == y[0]
            else:
                assert draw is INFINITE
