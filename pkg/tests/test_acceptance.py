"""
End-to-end acceptance runs
The full-size runs are marked slow; the default runs use reduced sizes
"""
import numpy as np
import pytest

from monotest.blue.blue import check_blue_chain, random_blue_instance
from monotest.boolfn.families import (anti_dictator, anti_majority, brute_force_distance,
                                      constant, dictator, enumerate_monotone, majority,
                                      random_function, random_monotone, two_block_example)
from monotest.boolfn.oracle import QueryOracle
from monotest.boolfn.truthtable import TruthTable
from monotest.harness import cli
from monotest.harness.experiment import ExperimentSpec, estimate_rejection, render_rows, run_sweep
from monotest.hypercube.params import make_params, params_for_distance
from monotest.metrics.distance import distance_to_monotonicity
from monotest.metrics.matching import gamma_plus
from monotest.metrics.violations import phi_plus
from monotest.testers.runner import combined_test, edge_only_test, path_only_test


class TestOneSided:
    def test_monotone_n4(self):
        """Test that no monotone function on four variables is ever rejected"""
        codes = enumerate_monotone(4)
        assert len(codes) == 168
        for code in codes:
            oracle = QueryOracle(TruthTable.from_int(code, 4))
            for seed in range(5):
                assert not combined_test(oracle.fresh(), 0.5, 1.0, seed=seed).verdict.rejected

    @pytest.mark.slow
    def test_monotone_n4_full(self):
        """Test 10^3 draws of each tester on every monotone function on four variables

        At n=4 every eps <= 1/2 lies below n^{-1/4}, so the combined tester runs
        edge draws only; the path tester is driven directly to cover it.
        """
        params = make_params(4, 0.5, 0.5)
        for code in enumerate_monotone(4):
            oracle = QueryOracle(TruthTable.from_int(code, 4))
            run = combined_test(oracle.fresh(), 0.5, 125.0, seed=code)
            assert run.config["mode"] == "edge" and run.rounds_run == 1000
            assert not run.verdict.rejected, code
            assert not path_only_test(oracle.fresh(), params, 1000, seed=code).verdict.rejected, code

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [8, 12, 16])
    def test_random_monotone(self, n):
        """Test 10^2 draws on each of 10^3 random monotone functions"""
        params = make_params(n, 0.5, 0.5)
        for seed in range(1000):
            oracle = QueryOracle(random_monotone(n, seed))
            assert not combined_test(oracle.fresh(), 0.5, 1.0, seed=seed).verdict.rejected, seed
            assert not path_only_test(oracle.fresh(), params, 100, seed=seed).verdict.rejected, seed
            assert not edge_only_test(oracle.fresh(), 100, seed=seed).verdict.rejected, seed

    def test_combined_non_adaptive(self):
        """Test that the combined tester queries the same points whatever the function"""
        logs = []
        for f in (constant(16, 1), majority(16), anti_majority(16)):
            oracle = QueryOracle(f, keep_log=True)
            run = combined_test(oracle, 0.5, 1.0, seed=12)
            assert run.config["mode"] == "combined"
            logs.append(oracle.query_log)
        assert logs[0] == logs[1]
        assert logs[2] == logs[0][:len(logs[2])]


class TestDistanceOracle:
    def test_random_n5(self):
        """Test the min cut against enumeration at n=5"""
        for seed in range(40):
            f = random_function(5, seed)
            assert distance_to_monotonicity(f) * 32 == brute_force_distance(f)

    @pytest.mark.slow
    def test_random_n5_full(self):
        """Test the min cut against enumeration on 10^3 random functions at n=5"""
        for seed in range(1000):
            f = random_function(5, seed)
            assert distance_to_monotonicity(f) * 32 == brute_force_distance(f), seed

    @pytest.mark.slow
    def test_exhaustive_n4(self):
        """Test the min cut against enumeration for every function at n=4"""
        for code in range(1 << 16):
            f = TruthTable.from_int(code, 4)
            assert distance_to_monotonicity(f) * 16 == brute_force_distance(f), code


def dichotomy_holds(f: TruthTable) -> bool:
    """Phi+ * Gamma+ >= eps_f^2 / 32 in exact arithmetic"""
    eps_f = distance_to_monotonicity(f)
    gamma = gamma_plus(f, params_for_distance(f.n, eps_f)).value
    return phi_plus(f) * gamma >= eps_f ** 2 / 32


class TestDichotomyInequality:
    @pytest.mark.slow
    @pytest.mark.parametrize("n", [5, 6, 7, 8])
    def test_random(self, n):
        """Test the inequality on 10^4 random functions"""
        for seed in range(10_000):
            assert dichotomy_holds(random_function(n, seed)), seed

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [9, 10])
    def test_random_large(self, n):
        """Test the inequality on 10^3 random functions (scaled down from 10^4 for runtime)"""
        for seed in range(1000):
            assert dichotomy_holds(random_function(n, seed)), seed

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [5, 6, 7, 8, 9, 10])
    def test_families(self, n):
        """Test the inequality on every named family"""
        functions = [constant(n, 0), constant(n, 1), majority(n), anti_majority(n),
                     two_block_example(n - 1), random_monotone(n, n)]
        functions += [dictator(n, i) for i in range(n)] + [anti_dictator(n, i) for i in range(n)]
        for f in functions:
            assert dichotomy_holds(f)


class TestSweeps:
    def test_lemma_sweep(self):
        """Test the lemma checks on seeded random functions"""
        for n in (5, 6):
            result = run_sweep(ExperimentSpec(kind="dichotomy-sweep", n=n, trials=10, seed=n))
            assert result.passed

    @pytest.mark.slow
    def test_lemma_sweep_full(self):
        """Test the lemma checks for n = 5..8"""
        for n in range(5, 9):
            result = run_sweep(ExperimentSpec(kind="dichotomy-sweep", n=n, trials=1000, seed=n))
            assert result.passed

    @pytest.mark.slow
    def test_exhaustive_dichotomy(self):
        """Test the exhaustive n=4 dichotomy sweep"""
        result = run_sweep(ExperimentSpec(kind="dichotomy-sweep", n=4, exhaustive=True))
        assert len(result.rows) == 65536
        assert result.passed

    def test_routing_sweep(self):
        """Test routing of every harvested instance"""
        result = run_sweep(ExperimentSpec(kind="routing-check", n=7, trials=5, seed=11))
        assert result.rows and result.passed

    @pytest.mark.slow
    def test_pair_probabilities(self):
        """Test sampled outcome frequencies at n=8"""
        result = run_sweep(ExperimentSpec(kind="pairprob-validate", n=8, eps=0.5, sigma=0.5,
                                          trials=1_000_000, seed=8))
        assert result.payload["total_mass_ok"]
        assert result.passed

    @pytest.mark.slow
    @pytest.mark.parametrize("sigma", [0.05, 0.1, 0.2])
    def test_blue_chain(self, sigma):
        """Test the blue-blue chain on random blue sets at n=12"""
        params = make_params(12, 0.25, sigma)
        for seed in range(100):
            instance = random_blue_instance(params, sigma, np.random.default_rng(seed))
            assert check_blue_chain(instance).chain_pass

    def test_edge_exactness(self):
        """Test edge tester rates against Phi+/n"""
        for seed in range(3):
            spec = ExperimentSpec(kind="tester-estimate", n=10, family=f"random:10,{seed}",
                                  tester="edge", trials=5000, seed=seed)
            assert estimate_rejection(spec).consistent

    @pytest.mark.slow
    def test_edge_exactness_full(self):
        """Test edge tester rates against Phi+/n on 20 functions over 10^5 draws"""
        for seed in range(20):
            spec = ExperimentSpec(kind="tester-estimate", n=10, family=f"random:10,{seed}",
                                  tester="edge", trials=100_000, seed=seed)
            assert estimate_rejection(spec).consistent, seed



class TestEndToEnd:
    @pytest.mark.parametrize("f", [anti_dictator(16, 0), anti_majority(13)])
    def test_combined_rejects(self, f):
        """Test that the combined tester rejects far functions"""
        rejected = sum(combined_test(QueryOracle(f), 0.4, 200.0, seed=s).verdict.rejected
                       for s in range(100))
        assert rejected >= 95

    def test_worker_count_invariant(self):
        """Test that the worker count does not change the output"""
        spec = dict(kind="dichotomy-sweep", n=4, trials=6, seed=5)
        single = run_sweep(ExperimentSpec(workers=1, **spec))
        pooled = run_sweep(ExperimentSpec(workers=2, **spec))
        assert render_rows(single.rows, "csv") == render_rows(pooled.rows, "csv")

    def test_byte_identical_outputs(self, tmp_path):
        """Test that a repeated sweep writes the same bytes"""
        outputs = []
        for k in range(2):
            out = tmp_path / f"run{k}.csv"
            argv = ["estimate", "--family", "anti_majority:6", "--tester", "path",
                    "--trials", "400", "--seed", "3", "--out", str(out)]
            assert cli.main(argv) == 0
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]
