"""
Repetition-based testers
Amplifies the single-draw pair testers into the combined tester, the
sensitivity-adaptive tester and the path-only mode
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..boolfn.oracle import QueryOracle
from ..hypercube.params import TesterParams, check_eps, make_params
from ..util.logging import debug
from .tester import EdgeTester, PairTester, PathTester, Verdict

DEFAULT_BUDGET_CONSTANT = 200.0


@dataclass
class TesterRun:
    """Configuration and outcome of one amplified tester run"""
    config: Dict[str, Any]
    verdict: Verdict
    rounds_run: int
    draw_log: Optional[List[str]] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {"config": self.config, "verdict": self.verdict.to_dict(), "rounds_run": self.rounds_run}


def _repeat(oracle: QueryOracle, testers: List[PairTester], repetitions: int,
            rng: np.random.Generator, config: Dict[str, Any], keep_log: bool = False) -> TesterRun:
    """Run up to `repetitions` rounds, stopping at the first violation

    With more than one tester each round first flips a fair coin (consuming
    randomness before the draw) to choose which one runs.
    """
    queries = 0
    log: Optional[List[str]] = [] if keep_log else None
    for round_index in range(repetitions):
        if len(testers) > 1:
            tester = testers[int(rng.integers(len(testers)))]
        else:
            tester = testers[0]
        verdict = tester.test_once(oracle, rng)
        queries += verdict.queries_used
        if log is not None:
            log.append(tester.type)
        if verdict.rejected:
            debug(f"{config['mode']} tester rejected in round {round_index + 1} "
                  f"with witness {verdict.witness.x} -> {verdict.witness.y}")
            return TesterRun(config, Verdict(True, verdict.witness, queries), round_index + 1, log)
    return TesterRun(config, Verdict(False, None, queries), repetitions, log)


def combined_rounds(n: int, eps: float, budget_constant: float) -> int:
    """T = ceil(c n^{7/8} eps^{-3/2} ln(1/eps))"""
    return math.ceil(budget_constant * n ** 0.875 * eps ** -1.5 * math.log(1.0 / eps))


def combined_sigma(n: int, eps: float) -> float:
    """sigma = n^{-1/8} eps^{1/2} / 32"""
    return n ** -0.125 * math.sqrt(eps) / 32.0


def combined_test(oracle: QueryOracle, eps, budget_constant: float = DEFAULT_BUDGET_CONSTANT,
                  rng: np.random.Generator = None, seed: Optional[int] = None,
                  keep_log: bool = False) -> TesterRun:
    """Edge tester or path tester with probability 1/2 each round

    For eps < n^{-1/4} the edge tester alone is run ceil(c n / eps) times.
    """
    eps = check_eps(eps)
    if budget_constant <= 0:
        raise ValueError(f"budget constant must be positive, got {budget_constant}")
    rng = rng if rng is not None else np.random.default_rng(seed)
    n = oracle.n
    config: Dict[str, Any] = {"eps": eps, "budget_constant": budget_constant, "seed": seed}

    if eps < n ** -0.25:
        repetitions = math.ceil(budget_constant * n / eps)
        config.update(mode="edge", sigma=None, repetitions=repetitions)
        return _repeat(oracle, [EdgeTester(n)], repetitions, rng, config, keep_log)

    sigma = combined_sigma(n, eps)
    params = make_params(n, eps, sigma)
    repetitions = combined_rounds(n, eps, budget_constant)
    config.update(mode="combined", sigma=sigma, repetitions=repetitions)
    return _repeat(oracle, [EdgeTester(n), PathTester(params)], repetitions, rng, config, keep_log)


def sensitivity_rounds(n: int, eps: float, avg_sensitivity: float, budget_constant: float) -> int:
    """T = ceil(c n^{1/2} eps^{-6} I^3 ln(1/eps))"""
    return math.ceil(budget_constant * math.sqrt(n) * eps ** -6 * avg_sensitivity ** 3
                     * math.log(1.0 / eps))


def sensitivity_test(oracle: QueryOracle, eps, avg_sensitivity: float,
                     budget_constant: float = DEFAULT_BUDGET_CONSTANT,
                     rng: np.random.Generator = None, seed: Optional[int] = None) -> TesterRun:
    """Path tester alone with sigma = eps^2 / (32 I(f))"""
    eps = check_eps(eps)
    avg_sensitivity = float(avg_sensitivity)
    if avg_sensitivity <= 0:
        raise ValueError(f"average sensitivity must be positive, got {avg_sensitivity}")
    rng = rng if rng is not None else np.random.default_rng(seed)
    n = oracle.n
    # sigma is a fraction of the cube; tiny sensitivities would push it past 1
    sigma = min(1.0, eps * eps / (32.0 * avg_sensitivity))
    params = make_params(n, eps, sigma)
    repetitions = sensitivity_rounds(n, eps, avg_sensitivity, budget_constant)
    config = {"mode": "sensitivity", "eps": eps, "sigma": sigma, "avg_sensitivity": avg_sensitivity,
              "budget_constant": budget_constant, "repetitions": repetitions, "seed": seed}
    return _repeat(oracle, [PathTester(params)], repetitions, rng, config)


def path_only_test(oracle: QueryOracle, params: TesterParams, repetitions: int,
                   rng: np.random.Generator = None, seed: Optional[int] = None) -> TesterRun:
    """The path tester by itself for a fixed number of draws"""
    if repetitions < 1:
        raise ValueError(f"repetitions must be positive, got {repetitions}")
    rng = rng if rng is not None else np.random.default_rng(seed)
    config = {"mode": "path", "eps": params.eps, "sigma": params.sigma,
              "repetitions": repetitions, "seed": seed}
    return _repeat(oracle, [PathTester(params)], repetitions, rng, config)


def edge_only_test(oracle: QueryOracle, repetitions: int,
                   rng: np.random.Generator = None, seed: Optional[int] = None) -> TesterRun:
    """The edge tester by itself for a fixed number of draws"""
    if repetitions < 1:
        raise ValueError(f"repetitions must be positive, got {repetitions}")
    rng = rng if rng is not None else np.random.default_rng(seed)
    config = {"mode": "edge", "repetitions": repetitions, "seed": seed}
    return _repeat(oracle, [EdgeTester(oracle.n)], repetitions, rng, config)
