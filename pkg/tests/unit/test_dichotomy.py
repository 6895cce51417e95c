"""
Test routing, alternating sequences, extraction and the dichotomy checks
"""
from fractions import Fraction

import pytest

from monotest.boolfn.families import (anti_dictator, anti_majority, constant, majority,
                                      random_function, random_monotone)
from monotest.boolfn.truthtable import TruthTable
from monotest.dichotomy.alternating import Termination, alternating_sequences
from monotest.dichotomy.routing import (RoutingInstance, lehman_ron_route,
                                        verify_path_system)
from monotest.dichotomy.verify import (count_crossing_pairs, extract_violated_edge_matching,
                                       per_dimension_check, verify_dichotomy, verify_lemmas)
from monotest.hypercube.point import Point
from monotest.metrics.matching import Matching, min_length_max_matching


def routing_instance(pairs):
    n = len(pairs[0][0])
    return RoutingInstance(n, [(Point.from_string(s).bits, Point.from_string(r).bits)
                               for s, r in pairs])


class TestRouting:
    @pytest.mark.parametrize("pairs", [
        [("100", "110"), ("010", "011")],
        [("100", "101"), ("010", "011")],
    ])
    def test_small_instances(self, pairs):
        """Test the two-pair instances on n=3"""
        instance = routing_instance(pairs)
        result = lehman_ron_route(instance)
        assert result.success
        assert verify_path_system(instance, result.paths) == []

    def test_longer_paths(self):
        """Test routing across three layers"""
        instance = routing_instance([("1000", "1111")])
        result = lehman_ron_route(instance)
        assert result.success
        assert len(result.paths[0]) == 4
        assert verify_path_system(instance, result.paths) == []

    def test_verifier_catches_overlap(self):
        """Test that shared vertices and wrong endpoints are reported"""
        instance = routing_instance([("1000", "1110"), ("0100", "1101")])
        bad = [[0b0001, 0b0011, 0b0111], [0b0010, 0b0011, 0b0111]]
        problems = verify_path_system(instance, bad)
        assert any("shares vertices" in p for p in problems)
        assert any("sink set" in p for p in problems)
        assert verify_path_system(instance, bad[:1])

    @pytest.mark.parametrize("pairs", [
        [],
        [("100", "110"), ("010", "111")],
        [("100", "011")],
        [("100", "110"), ("100", "101")],
        [("110", "100")],
    ])
    def test_malformed_instances(self, pairs):
        """Test that malformed instances are rejected"""
        with pytest.raises(ValueError):
            if pairs:
                routing_instance(pairs)
            else:
                RoutingInstance(3, [])

    def test_all_middle_groups_route(self):
        """Test routing of every level group of a min-length matching"""
        from monotest.dichotomy.verify import short_middle_groups
        from monotest.hypercube.params import make_params
        for seed in range(5):
            f = random_function(7, seed)
            matching = min_length_max_matching(f)
            for pairs in short_middle_groups(matching, make_params(7, 0.5, 0.5)).values():
                instance = RoutingInstance(7, pairs)
                assert verify_path_system(instance, lehman_ron_route(instance).paths) == []


class TestAlternating:
    def test_anti_dictator_two(self):
        """Test sequences of anti_dictator(2,0) along dimension 0"""
        f = anti_dictator(2, 0)
        matching = min_length_max_matching(f)
        report = alternating_sequences(f, matching, 0)
        assert len(report.sequences) == 2
        assert all(s.termination == Termination.REACHED_X for s in report.sequences)
        assert report.distinct_violated_edges == {(0b00, 0b01), (0b10, 0b11)}
        assert report.passed
        assert alternating_sequences(f, matching, 1).sequences == []

    def test_anti_dictator_three(self):
        """Test the four sequences of anti_dictator(3,0)"""
        f = anti_dictator(3, 0)
        report = alternating_sequences(f, min_length_max_matching(f), 0)
        assert len(report.sequences) == 4
        assert report.matched_pairs == 4
        assert report.all_contain_violation

    def test_random_functions(self):
        """Test the violated-edge count on random functions in every dimension"""
        for seed in range(6):
            f = random_function(5, seed)
            matching = min_length_max_matching(f)
            for i in range(5):
                report = alternating_sequences(f, matching, i)
                assert report.passed
                assert len({s.key() for s in report.sequences}) == len(report.sequences)

    def test_rejects_non_maximum(self):
        """Test that a non-maximum matching is refused"""
        f = anti_dictator(2, 0)
        with pytest.raises(ValueError):
            alternating_sequences(f, Matching(2, [(0b00, 0b01)]), 0)
        with pytest.raises(ValueError):
            alternating_sequences(f, Matching(2, [(0b01, 0b00)]), 0)
        with pytest.raises(ValueError):
            alternating_sequences(f, min_length_max_matching(f), 2)


class TestExtraction:
    def test_anti_dictator_two(self):
        """Test extraction on anti_dictator(2,0)"""
        result = extract_violated_edge_matching(anti_dictator(2, 0))
        assert result.groups == {(0, 1): 1, (1, 2): 1}
        assert result.edges == [(0b00, 0b01), (0b10, 0b11)]
        assert result.required == 1
        assert result.passed

    def test_anti_majority_six(self):
        """Test extraction on anti_majority(6)"""
        f = anti_majority(6)
        result = extract_violated_edge_matching(f)
        assert result.problems == []
        assert result.passed
        assert len(result.edges) <= len(set(result.multiset))

    def test_monotone(self):
        """Test that a monotone function extracts nothing"""
        result = extract_violated_edge_matching(majority(5))
        assert result.edges == []
        assert result.required == 0
        assert result.passed


class TestDichotomy:
    def test_anti_majority_two(self):
        """Test the dichotomy report of anti_majority(2)"""
        report = verify_dichotomy(anti_majority(2))
        assert report.eps_f == Fraction(1, 4)
        assert report.product == Fraction(1, 4)
        assert report.bound == Fraction(1, 512)
        assert report.r == 1
        assert report.all_pass

    def test_monotone(self):
        """Test that monotone functions pass with r = 0"""
        for f in (constant(4, 0), majority(5), random_monotone(6, 2)):
            report = verify_dichotomy(f)
            assert report.eps_f == 0 and report.r == 0
            assert report.all_pass

    @pytest.mark.parametrize("b", [0, 1])
    def test_constant(self, b):
        """Test the dichotomy report and lemma row of a constant function"""
        report = verify_dichotomy(constant(4, b))
        assert report.eps_f == 0 and report.phi_plus == 0 and report.gamma_plus == 0
        assert report.matching_size == 0
        assert report.all_pass
        row = verify_lemmas(constant(5, b))
        assert row["pass"] and row["extraction_pass"] and row["alternating_pass"]

    def test_per_dimension(self):
        """Test violated edges per dimension against |M_i|"""
        for seed in range(8):
            assert per_dimension_check(random_function(6, seed)).passed

    def test_lemma_row(self):
        """Test the combined lemma row on a random function"""
        row = verify_lemmas(random_function(6, 17))
        assert row["pass"] and row["gamma_bound_pass"] and row["phi_bound_pass"] and row["per_dim_pass"]
        assert row["extraction_pass"] and row["alternating_pass"]
        assert row["crossing_pairs"] >= 0

    def test_crossing_pairs(self):
        """Test the crossing-pair diagnostic"""
        crossing = Matching(4, [(0b0000, 0b0011), (0b0001, 0b0111)])
        assert count_crossing_pairs(crossing) == 1
        assert count_crossing_pairs(Matching(4, [(0b0000, 0b0001), (0b0010, 0b0110)])) == 0

    def test_exhaustive_n3(self):
        """Test every function on three variables"""
        for code in range(256):
            row = verify_lemmas(TruthTable.from_int(code, 3))
            assert row["pass"] and row["per_dim_pass"], code
            assert row["extraction_pass"] is not False, code
            assert row["alternating_pass"] is not False, code

    @pytest.mark.slow
    def test_exhaustive_n4(self):
        """Test the dichotomy on every function on four variables"""
        for code in range(1 << 16):
            report = verify_dichotomy(TruthTable.from_int(code, 4))
            assert report.all_pass, code
