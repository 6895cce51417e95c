"""
Test blue-blue probabilities of the path tester
"""
from fractions import Fraction

import numpy as np
import pytest

from monotest.blue.blue import (BlueInstance, check_blue_chain, effective_mu, exact_blue_prob,
                                expected_blue_fraction, layer_blue_instance, random_blue_instance,
                                sample_blue_fraction, sample_blue_prob)
from monotest.harness.stats import within_standard_errors
from monotest.hypercube.params import make_params


@pytest.fixture
def full_window():
    params = make_params(6, 0.5, 0.25)
    assert (params.i_lo, params.i_hi) == (0, 6)
    assert params.tau <= 0
    return params


class TestBlueProbability:
    def test_all_blue(self, full_window):
        """Test that a fully blue cube gives probability 1"""
        instance = layer_blue_instance(full_window, full_window.levels)
        assert exact_blue_prob(instance) == 1
        assert expected_blue_fraction(instance) == 1

    def test_no_blue(self, full_window):
        """Test the empty blue set"""
        instance = BlueInstance(full_window, frozenset())
        assert exact_blue_prob(instance) == 0
        assert expected_blue_fraction(instance) == 0

    def test_single_layer(self, full_window):
        """Test that one full layer gives E = 1/|X_p|"""
        instance = layer_blue_instance(full_window, [3])
        assert expected_blue_fraction(instance) == Fraction(1, 7)
        assert instance.layer_counts()[3] == 20

    def test_outside_middle_rejected(self):
        """Test that blue points must lie in the middle layers"""
        params = make_params(64, 0.5, 0.5)
        with pytest.raises(ValueError):
            BlueInstance(params, frozenset([0]))

    def test_nested_sets(self, full_window):
        """Test that growing the blue set never lowers the probability"""
        rng = np.random.default_rng(0)
        points = list(range(64))
        rng.shuffle(points)
        previous = Fraction(0)
        for k in range(0, 65, 8):
            prob = exact_blue_prob(BlueInstance(full_window, frozenset(points[:k])))
            assert prob >= previous
            previous = prob

    def test_monte_carlo_agreement(self, full_window):
        """Test sampled blue-blue frequency against the exact value"""
        instance = random_blue_instance(full_window, 0.5, np.random.default_rng(1))
        exact = exact_blue_prob(instance)
        hits = sample_blue_prob(instance, 20000, np.random.default_rng(2))
        assert within_standard_errors(hits, 20000, float(exact), 4.0)

    def test_sampled_fraction(self, full_window):
        """Test the path-averaged blue fraction against its expectation"""
        instance = random_blue_instance(full_window, 0.3, np.random.default_rng(3))
        sampled = sample_blue_fraction(instance, 5000, np.random.default_rng(4))
        assert sampled == pytest.approx(float(expected_blue_fraction(instance)), abs=0.02)


class TestBlueChain:
    def test_chain_n12(self):
        """Test the chain at n=12, eps=1/4"""
        params = make_params(12, 0.25, 0.1)
        for seed in range(3):
            report = check_blue_chain(random_blue_instance(params, 0.1, np.random.default_rng(seed)))
            assert report.chain_pass
            assert report.fraction_pass
            assert report.passed

    def test_effective_mu(self, full_window):
        """Test that negative tau leaves nothing excluded"""
        assert effective_mu(full_window) == 0
        narrow = make_params(12, 0.25, 1.0).with_tau(3)
        assert effective_mu(narrow) > 0

    def test_density_below_sigma(self, full_window):
        """Test that a blue set sparser than sigma is refused"""
        with pytest.raises(ValueError):
            check_blue_chain(BlueInstance(full_window, frozenset([7])))

    def test_row(self):
        """Test the report row"""
        params = make_params(8, 0.25, 0.1)
        row = check_blue_chain(random_blue_instance(params, 0.1, np.random.default_rng(5))).to_row()
        assert row["blue"] == 26
        assert row["chain_pass"] is True
        assert 0.0 <= row["prob_float"] <= 1.0
