"""
Seeded experiments and verification sweeps

Every trial or sweep instance draws its randomness from
derive_seed(master seed, index), and results are merged in index order, so
the worker count never changes the output.
"""
import csv
import io
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..blue.blue import check_blue_chain, random_blue_instance
from ..boolfn.families import create_function, random_function
from ..boolfn.oracle import BooleanFunction, QueryOracle
from ..boolfn.truthtable import TruthTable, read_table
from ..dichotomy.routing import RoutingInstance, lehman_ron_route, verify_path_system
from ..dichotomy.verify import short_middle_groups, verify_lemmas
from ..hypercube.params import make_params, params_for_distance
from ..hypercube.paths import level_pair_prob, total_outcome_mass
from ..hypercube.point import Point, popcount, submasks
from ..metrics.distance import monotone_repair
from ..metrics.matching import min_length_max_matching
from ..metrics.report import (compute_metrics, edge_rejection_probability,
                              exact_rejection_probability, format_fraction)
from ..metrics.violations import MAX_PAIR_DIMENSION, average_sensitivity
from ..testers.runner import DEFAULT_BUDGET_CONSTANT, combined_test, sensitivity_test
from ..testers.tester import EdgeTester, PathTester
from ..util.logging import debug, info, init_worker_logging, warning, worker_logging_args
from .stats import derive_seed, wilson_interval, within_standard_errors

KINDS = ("tester-estimate", "dichotomy-sweep", "blue-sweep", "metrics", "routing-check",
         "pairprob-validate")
TESTERS = ("combined", "edge", "path", "sensitivity")

# Draws per pair-probability chunk; fixed so chunk seeds do not depend on workers
PAIRPROB_CHUNK = 50_000


@dataclass
class ExperimentSpec:
    """What to run, on which function, with which seed"""
    kind: str
    n: Optional[int] = None
    family: Optional[str] = None
    table: Optional[str] = None
    eps: Optional[float] = None
    sigma: Optional[float] = None
    trials: int = 1000
    seed: int = 0
    budget_constant: float = DEFAULT_BUDGET_CONSTANT
    tester: str = "combined"
    exhaustive: bool = False
    workers: int = 1
    confidence: float = 0.95
    tolerance_se: float = 4.0
    min_probability: float = 1e-4

    def validate(self) -> 'ExperimentSpec':
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}; known: {', '.join(KINDS)}")
        if self.tester not in TESTERS:
            raise ValueError(f"unknown tester {self.tester!r}; known: {', '.join(TESTERS)}")
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")
        if self.seed < 0:
            raise ValueError(f"master seed must be non-negative, got {self.seed}")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")
        if self.family and self.table:
            raise ValueError("give either a family or a table, not both")
        if self.n is None and not (self.family or self.table):
            raise ValueError(f"{self.kind} needs --n, --family or --table")
        return self


@dataclass
class EstimateResult:
    estimate: float
    interval: Tuple[float, float]
    trials: int
    rejections: int
    queries_total: int
    exact: Optional[Any] = None
    consistent: Optional[bool] = None
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def mean_queries(self) -> float:
        return self.queries_total / self.trials

    def to_row(self) -> dict:
        exact = self.exact
        return {
            "estimate": self.estimate,
            "ci_low": self.interval[0],
            "ci_high": self.interval[1],
            "trials": self.trials,
            "rejections": self.rejections,
            "queries_total": self.queries_total,
            "mean_queries": self.mean_queries,
            "exact": format_fraction(exact) if isinstance(exact, Fraction) else exact,
            "exact_float": None if exact is None else float(exact),
            "pass": self.consistent is not False,
        }


@dataclass
class SweepResult:
    kind: str
    rows: List[dict]
    payload: Optional[dict] = None

    @property
    def failed_rows(self) -> int:
        return sum(1 for row in self.rows if row.get("pass") is False)

    @property
    def passed(self) -> bool:
        return self.failed_rows == 0


def load_function(spec: ExperimentSpec) -> BooleanFunction:
    """The function an experiment runs on: a truth-table file or a family"""
    if spec.table:
        function = read_table(spec.table)
    elif spec.family:
        function = create_function(spec.family, spec.n)
    else:
        raise ValueError(f"{spec.kind} needs --family or --table")
    if spec.n is not None and function.n != spec.n:
        raise ValueError(f"function has dimension {function.n} but --n is {spec.n}")
    return function


def _require_table(function: BooleanFunction, purpose: str) -> TruthTable:
    if not isinstance(function, TruthTable):
        raise ValueError(f"{purpose} needs a materialized truth table")
    return function


def _map_ordered(worker: Callable, tasks: Sequence, workers: int) -> List:
    """Apply `worker` to every task, results in task order"""
    if workers <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers, initializer=init_worker_logging,
                             initargs=worker_logging_args()) as executor:
        return list(executor.map(worker, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def _chunks(total: int, workers: int) -> List[Tuple[int, int]]:
    size = max(1, -(-total // (4 * workers))) if workers > 1 else total
    return [(start, min(total, start + size)) for start in range(0, total, size)]


# Tester estimates

def _estimate_chunk(task: Tuple[ExperimentSpec, int, int]) -> Tuple[int, int]:
    spec, start, stop = task
    function = load_function(spec)
    eps = spec.eps if spec.eps is not None else 0.5
    sigma = spec.sigma if spec.sigma is not None else 0.5
    single = None
    if spec.tester == "edge":
        single = EdgeTester(function.n)
    elif spec.tester == "path":
        single = PathTester(make_params(function.n, eps, sigma))
    avg_sensitivity = None
    if spec.tester == "sensitivity":
        avg_sensitivity = float(average_sensitivity(_require_table(function, "the sensitivity tester")))

    rejections = queries = 0
    for trial in range(start, stop):
        rng = np.random.default_rng(derive_seed(spec.seed, trial))
        oracle = QueryOracle(function)
        if single is not None:
            verdict = single.test_once(oracle, rng)
        elif spec.tester == "sensitivity":
            verdict = sensitivity_test(oracle, eps, avg_sensitivity, spec.budget_constant, rng=rng).verdict
        else:
            verdict = combined_test(oracle, eps, spec.budget_constant, rng=rng).verdict
        rejections += int(verdict.rejected)
        queries += oracle.query_count
    return rejections, queries


def _exact_single_draw(spec: ExperimentSpec, function: BooleanFunction):
    """Exact per-draw rejection probability where it can be computed"""
    if not isinstance(function, TruthTable):
        return None
    if spec.tester == "edge":
        return edge_rejection_probability(function)
    if spec.tester == "path" and function.n <= MAX_PAIR_DIMENSION:
        eps = spec.eps if spec.eps is not None else 0.5
        sigma = spec.sigma if spec.sigma is not None else 0.5
        return exact_rejection_probability(function, make_params(function.n, eps, sigma))
    return None


def estimate_rejection(spec: ExperimentSpec) -> EstimateResult:
    """Rejection frequency of the chosen tester over `trials` seeded runs"""
    spec.validate()
    function = load_function(spec)
    tasks = [(spec, start, stop) for start, stop in _chunks(spec.trials, spec.workers)]
    results = _map_ordered(_estimate_chunk, tasks, spec.workers)
    rejections = sum(r for r, _ in results)
    queries = sum(q for _, q in results)

    exact = _exact_single_draw(spec, function)
    consistent = None
    if exact is not None:
        consistent = within_standard_errors(rejections, spec.trials, float(exact), spec.tolerance_se)
    result = EstimateResult(
        estimate=rejections / spec.trials,
        interval=wilson_interval(rejections, spec.trials, spec.confidence),
        trials=spec.trials, rejections=rejections, queries_total=queries,
        exact=exact, consistent=consistent,
        config={"tester": spec.tester, "n": function.n, "eps": spec.eps, "sigma": spec.sigma,
                "seed": spec.seed, "budget_constant": spec.budget_constant},
    )
    info(f"{spec.tester} tester: {rejections}/{spec.trials} rejections, "
         f"interval [{result.interval[0]:.6f}, {result.interval[1]:.6f}]")
    if consistent is False:
        warning(f"rejection rate {result.estimate:.6f} is more than {spec.tolerance_se} standard "
                f"errors from the exact value {float(exact):.6f}")
    return result


# Dichotomy and routing sweeps

def _sweep_functions(spec: ExperimentSpec) -> List[Tuple[int, str, int]]:
    """(index, label, table code or seed) for every function of a sweep"""
    if spec.family or spec.table:
        return [(0, spec.family or spec.table, -1)]
    if spec.exhaustive:
        if spec.n > 4:
            raise ValueError(f"exhaustive sweeps are limited to n <= 4, got {spec.n}")
        return [(code, f"code:{code}", code) for code in range(1 << (1 << spec.n))]
    return [(k, f"random:{spec.n},{derive_seed(spec.seed, k)}", derive_seed(spec.seed, k))
            for k in range(spec.trials)]


def _instance_function(spec: ExperimentSpec, code: int) -> TruthTable:
    if spec.family or spec.table:
        return _require_table(load_function(spec), spec.kind)
    if spec.exhaustive:
        return TruthTable.from_int(code, spec.n)
    return random_function(spec.n, code)


def _dichotomy_row(task: Tuple[ExperimentSpec, int, str, int]) -> dict:
    spec, index, label, code = task
    f = _instance_function(spec, code)
    row = {"index": index, "function": label}
    row.update(verify_lemmas(f))
    row["pass"] = all(row[key] is not False for key in
                      ("pass", "gamma_bound_pass", "phi_bound_pass", "per_dim_pass",
                       "extraction_pass", "alternating_pass"))
    debug(f"dichotomy instance {index}: {row}")
    return row


def _routing_rows(task: Tuple[ExperimentSpec, int, str, int]) -> List[dict]:
    spec, index, label, code = task
    f = _instance_function(spec, code)
    changes, _ = monotone_repair(f)
    if changes == 0:
        return []
    matching = min_length_max_matching(f)
    params = params_for_distance(f.n, Fraction(changes, 1 << f.n))
    rows = []
    for (lower, upper), pairs in short_middle_groups(matching, params).items():
        instance = RoutingInstance(f.n, pairs)
        result = lehman_ron_route(instance)
        problems = verify_path_system(instance, result.paths)
        rows.append({
            "index": index, "function": label, "lower": lower, "upper": upper,
            "pairs": instance.size, "paths": len(result.paths),
            "problems": "; ".join(problems), "pass": result.success and not problems,
        })
    return rows


def _blue_row(task: Tuple[ExperimentSpec, int]) -> dict:
    spec, index = task
    eps = spec.eps if spec.eps is not None else 0.25
    sigma = spec.sigma if spec.sigma is not None else 0.1
    params = make_params(spec.n, eps, sigma)
    rng = np.random.default_rng(derive_seed(spec.seed, index))
    report = check_blue_chain(random_blue_instance(params, sigma, rng))
    row = {"index": index}
    row.update(report.to_row())
    row["pass"] = report.passed
    return row


def _pairprob_chunk(task: Tuple[ExperimentSpec, int, int]) -> Counter:
    spec, chunk, draws = task
    params = make_params(spec.n, spec.eps if spec.eps is not None else 0.5,
                         spec.sigma if spec.sigma is not None else 0.5)
    tester = PathTester(params)
    rng = np.random.default_rng(derive_seed(spec.seed, chunk))
    counts = Counter()
    for _ in range(draws):
        counts[tester.draw(rng)] += 1
    return counts


def validate_pair_probabilities(spec: ExperimentSpec) -> SweepResult:
    """Empirical path tester outcome frequencies against the exact per-outcome probabilities"""
    params = make_params(spec.n, spec.eps if spec.eps is not None else 0.5,
                         spec.sigma if spec.sigma is not None else 0.5)
    tasks = []
    for chunk, start in enumerate(range(0, spec.trials, PAIRPROB_CHUNK)):
        tasks.append((spec, chunk, min(PAIRPROB_CHUNK, spec.trials - start)))
    counts = Counter()
    for part in _map_ordered(_pairprob_chunk, tasks, spec.workers):
        counts.update(part)

    rows = []
    for y in range(1 << spec.n):
        for x in sorted(submasks(y)):
            prob = level_pair_prob(popcount(x), popcount(y), params)
            if prob < spec.min_probability:
                continue
            observed = counts.get((x, y), 0)
            rows.append({
                "x": Point(x, spec.n).to_string(), "y": Point(y, spec.n).to_string(),
                "prob": format_fraction(prob) if isinstance(prob, Fraction) else prob,
                "prob_float": float(prob), "observed": observed,
                "frequency": observed / spec.trials,
                "pass": within_standard_errors(observed, spec.trials, float(prob), spec.tolerance_se),
            })
    mass = total_outcome_mass(params)
    payload = {"params": params.to_dict(), "draws": spec.trials, "outcomes_checked": len(rows),
               "total_mass": format_fraction(mass) if isinstance(mass, Fraction) else mass,
               "total_mass_ok": abs(float(mass) - 1.0) <= 1e-9}
    if not payload["total_mass_ok"]:
        rows.append({"x": "", "y": "", "prob": payload["total_mass"], "pass": False})
    return SweepResult(spec.kind, rows, payload)


def run_sweep(spec: ExperimentSpec) -> SweepResult:
    """Run the sweep named by spec.kind; rows carry a `pass` column"""
    spec.validate()
    info(f"running {spec.kind} (n={spec.n}, trials={spec.trials}, seed={spec.seed}, "
         f"workers={spec.workers})")
    if spec.kind == "tester-estimate":
        estimate = estimate_rejection(spec)
        result = SweepResult(spec.kind, [estimate.to_row()], {"config": estimate.config})
    elif spec.kind == "metrics":
        function = _require_table(load_function(spec), "metrics")
        report = compute_metrics(function)
        row = report.to_dict()
        row["pass"] = True
        result = SweepResult(spec.kind, [row], report.to_dict())
    elif spec.kind == "dichotomy-sweep":
        tasks = [(spec, index, label, code) for index, label, code in _sweep_functions(spec)]
        result = SweepResult(spec.kind, _map_ordered(_dichotomy_row, tasks, spec.workers))
    elif spec.kind == "routing-check":
        tasks = [(spec, index, label, code) for index, label, code in _sweep_functions(spec)]
        rows = [row for part in _map_ordered(_routing_rows, tasks, spec.workers) for row in part]
        result = SweepResult(spec.kind, rows)
    elif spec.kind == "blue-sweep":
        if spec.n is None:
            raise ValueError("blue-sweep needs --n")
        tasks = [(spec, index) for index in range(spec.trials)]
        result = SweepResult(spec.kind, _map_ordered(_blue_row, tasks, spec.workers))
    else:
        if spec.n is None:
            raise ValueError("pairprob-validate needs --n")
        result = validate_pair_probabilities(spec)

    if result.passed:
        info(f"{spec.kind}: {len(result.rows)} rows, all pass")
    else:
        warning(f"{spec.kind}: {result.failed_rows} of {len(result.rows)} rows failed")
    return result


def render_rows(rows: List[dict], fmt: str, payload: Optional[dict] = None) -> str:
    """CSV (header row, LF line endings) or JSON text for a list of rows"""
    if fmt == "json":
        document = {"rows": rows} if payload is None else {"rows": rows, "summary": payload}
        return json.dumps(document, indent=2, sort_keys=True) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown output format {fmt!r}; use csv or json")
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row.get(k) is None else row.get(k) for k in columns})
    return buffer.getvalue()


def write_output(result: SweepResult, path: Optional[str], fmt: str) -> str:
    """Render and write a sweep result; returns the text written"""
    text = render_rows(result.rows, fmt, result.payload)
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        info(f"wrote {len(result.rows)} rows to {path}")
    return text
