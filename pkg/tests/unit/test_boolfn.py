"""
Test truth tables, the query oracle and the function families
"""
import numpy as np
import pytest

from monotest.boolfn.families import (anti_dictator, anti_majority, constant, create_function,
                                      dictator, enumerate_monotone, majority, random_function,
                                      random_monotone, two_block_example)
from monotest.boolfn.oracle import FunctionRule, QueryOracle, evaluate
from monotest.boolfn.truthtable import (TruthTable, decode_table, encode_table, is_monotone_exact,
                                        read_table, write_table)
from monotest.hypercube.point import Point
from monotest.metrics.violations import iter_violating_pairs


class TestTruthTable:
    def test_packing_layout(self):
        """Test little-endian bit order within bytes"""
        f = TruthTable.from_values([1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0], 4)
        assert f.packed == bytes([0b00001001, 0b00000001])
        assert f(0) == 1 and f(3) == 1 and f(8) == 1 and f(1) == 0
        assert list(f.ones()) == [0, 3, 8]

    def test_padding_must_be_zero(self):
        """Test that bits beyond 2^n - 1 are rejected"""
        with pytest.raises(ValueError):
            TruthTable(2, bytes([0b00010000]))
        with pytest.raises(ValueError):
            TruthTable(4, bytes([0]))

    def test_int_round_trip(self):
        """Test integer codes"""
        f = TruthTable.from_int(0b1110, 2)
        assert list(f.values) == [0, 1, 1, 1]
        assert f.to_int() == 0b1110

    def test_bftt_layout(self):
        """Test the BFTT header and payload"""
        data = encode_table(anti_majority(3))
        assert data[:4] == b"BFTT"
        assert data[4] == 1 and data[5] == 3
        assert data[6:] == bytes([0b00010111])
        assert decode_table(data) == anti_majority(3)

    @pytest.mark.parametrize("data", [b"XFTT\x01\x02\x07", b"BFTT\x02\x02\x07", b"BFTT\x01\x02\x07\x00",
                                      b"BFT"])
    def test_bftt_rejects_malformed(self, data):
        """Test that wrong magic, version or length raise ValueError"""
        with pytest.raises(ValueError):
            decode_table(data)

    def test_table_file(self, tmp_path):
        """Test writing and reading a table file"""
        path = tmp_path / "f.bftt"
        f = random_function(7, 3)
        write_table(f, str(path))
        assert read_table(str(path)) == f
        with pytest.raises(FileNotFoundError):
            read_table(str(tmp_path / "missing.bftt"))


class TestOracle:
    def test_evaluate_counts(self):
        """Test that every evaluation is charged"""
        oracle = QueryOracle(constant(3, 1), keep_log=True)
        assert evaluate(oracle, 0b101) == 1
        assert oracle.evaluate(Point(0b010, 3)) == 1
        assert oracle.query_count == 2
        assert oracle.query_log == [0b101, 0b010]

    def test_evaluate_families(self):
        """Test evaluation of dictator and anti_majority"""
        assert QueryOracle(dictator(3, 0)).evaluate(0b001) == 1
        assert QueryOracle(anti_majority(2)).evaluate(Point.from_string("11")) == 0

    def test_dimension_mismatch(self):
        """Test that points of the wrong dimension are rejected"""
        oracle = QueryOracle(constant(3, 0))
        with pytest.raises(ValueError):
            oracle.evaluate(Point(0, 4))
        with pytest.raises(ValueError):
            oracle.evaluate(0b1000)
        assert oracle.query_count == 0

    def test_rule_oracle_large_dimension(self):
        """Test a rule function beyond the table limit"""
        f = create_function("anti_majority:100")
        assert isinstance(f, FunctionRule)
        oracle = QueryOracle(f)
        assert oracle.evaluate(0) == 1
        assert oracle.evaluate((1 << 100) - 1) == 0

    def test_fresh_oracle(self):
        """Test that fresh() resets the counter"""
        oracle = QueryOracle(constant(2, 0))
        oracle.evaluate(1)
        assert oracle.fresh().query_count == 0


class TestFamilies:
    def test_anti_majority(self):
        """Test anti_majority values"""
        assert list(anti_majority(2).values) == [1, 1, 1, 0]
        assert list(anti_majority(1).values) == [1, 0]
        assert int(anti_majority(3).values.sum()) == 4

    def test_majority(self):
        """Test majority(3) is one iff |x| >= 2"""
        assert list(majority(3).ones()) == [0b011, 0b101, 0b110, 0b111]

    def test_dictators(self):
        """Test dictator and anti_dictator edge structure"""
        assert is_monotone_exact(dictator(3, 0))
        counts = anti_dictator(3, 0).violated_edge_counts()
        assert list(counts) == [4, 0, 0]

    def test_two_block_example(self):
        """Test the two-block function at n=16"""
        f = two_block_example(16)
        assert f.n == 17
        for rest in (0, 1, 0xFFFF):
            x = rest << 1
            assert f(x) == int(rest != 0)
            assert f(x | 1) == 0
        counts = f.violated_edge_counts()
        assert counts[0] > 0 and not counts[1:].any()

    def test_two_block_halves_monotone(self):
        """Test that both halves of the two-block function are monotone"""
        values = two_block_example(16).values
        for half in (values[0::2], values[1::2]):
            assert is_monotone_exact(TruthTable.from_values(half, 16))

    @pytest.mark.parametrize("seed", [7, 8, 9])
    def test_random_monotone(self, seed):
        """Test that random_monotone is monotone"""
        assert is_monotone_exact(random_monotone(6, seed))

    def test_random_function_deterministic(self):
        """Test that random functions depend only on the seed"""
        assert random_function(6, 42) == random_function(6, 42)
        assert random_function(6, 42) != random_function(6, 43)

    def test_enumerate_monotone_counts(self):
        """Test the Dedekind numbers M(1..5)"""
        assert [len(enumerate_monotone(n)) for n in range(1, 6)] == [3, 6, 20, 168, 7581]
        for code in enumerate_monotone(3):
            assert is_monotone_exact(TruthTable.from_int(code, 3))

    def test_edge_check_matches_pair_check(self):
        """Test that covering-edge monotonicity equals pairwise monotonicity at n=3"""
        for code in range(1 << 8):
            f = TruthTable.from_int(code, 3)
            assert is_monotone_exact(f) == (next(iter_violating_pairs(f), None) is None)

    def test_create_function(self):
        """Test family specs"""
        assert create_function("anti_dictator:4,1") == anti_dictator(4, 1)
        assert create_function("anti_majority", n=5) == anti_majority(5)
        with pytest.raises(ValueError):
            create_function("nope:3")
        with pytest.raises(ValueError):
            create_function("random:40,1")

    def test_create_function_arity(self, monkeypatch):
        """Test that only a wrong argument count becomes a usage error"""
        from monotest.boolfn import families
        with pytest.raises(ValueError, match="wrong number of arguments"):
            create_function("dictator:4")
        with pytest.raises(ValueError, match="wrong number of arguments"):
            create_function("majority:4,1,2")

        def broken(n):
            raise TypeError("internal failure")

        monkeypatch.setitem(families.FAMILIES, "broken", broken)
        with pytest.raises(TypeError, match="internal failure"):
            create_function("broken:3")


    @pytest.mark.slow
    def test_monotone_count_n4(self):
        """Test that exactly 168 of the 65536 functions at n=4 are monotone"""
        monotone = {code for code in range(1 << 16) if is_monotone_exact(TruthTable.from_int(code, 4))}
        assert monotone == set(enumerate_monotone(4))
