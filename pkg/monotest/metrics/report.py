"""
MetricsReport: every exact quantity of one function in a single record
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..boolfn.truthtable import TruthTable
from ..hypercube.params import TesterParams, params_for_distance
from ..hypercube.paths import EXACT_DIMENSION_LIMIT, Probability, level_pair_prob
from ..hypercube.point import popcount
from ..util.logging import debug
from .distance import MAX_DISTANCE_DIMENSION, monotone_repair
from .matching import MAX_MIN_LENGTH_DIMENSION, gamma_plus, min_length_max_matching
from .violations import (average_sensitivity, directed_boundary,
                         iter_violating_pairs, phi_plus)


def format_fraction(value: Optional[Fraction]):
    if value is None:
        return None
    return f"{value.numerator}/{value.denominator}"


def edge_rejection_probability(f: TruthTable) -> Fraction:
    """Rejection probability of one edge tester draw: Phi+ / n"""
    return phi_plus(f) / f.n


def exact_rejection_probability(f: TruthTable, params: TesterParams) -> Probability:
    """Rejection probability of one path tester draw, summed over violating outcomes"""
    if params.n != f.n:
        raise ValueError(f"params dimension {params.n} does not match function dimension {f.n}")
    total = Fraction(0) if f.n <= EXACT_DIMENSION_LIMIT else 0.0
    for x, y in iter_violating_pairs(f):
        total += level_pair_prob(popcount(x), popcount(y), params)
    return total


@dataclass
class MetricsReport:
    n: int
    eps_f: Fraction
    phi_plus: Fraction
    gamma_plus: Fraction
    avg_sensitivity: Fraction
    boundary_plus: int
    r: Optional[Fraction]
    params: TesterParams
    counts: dict = field(default_factory=dict)

    @property
    def dichotomy_product(self) -> Fraction:
        return self.phi_plus * self.gamma_plus

    @property
    def dichotomy_bound(self) -> Fraction:
        return self.eps_f ** 2 / 32

    def to_dict(self) -> dict:
        exact = {
            "eps_f": self.eps_f, "phi_plus": self.phi_plus, "gamma_plus": self.gamma_plus,
            "avg_sensitivity": self.avg_sensitivity, "r": self.r,
        }
        result = {"n": self.n}
        for name, value in exact.items():
            result[name] = format_fraction(value)
            result[f"{name}_float"] = None if value is None else float(value)
        result["boundary_plus"] = self.boundary_plus
        result["params"] = self.params.to_dict()
        result["counts"] = dict(self.counts)
        return result

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def compute_metrics(f: TruthTable, params: Optional[TesterParams] = None,
                    with_matching: Optional[bool] = None) -> MetricsReport:
    """Compute the full report; r needs the min-cost matching and is skipped above n = 12"""
    if f.n > MAX_DISTANCE_DIMENSION:
        raise ValueError(f"metrics need n <= {MAX_DISTANCE_DIMENSION}, got {f.n}")
    changes, _ = monotone_repair(f)
    eps_f = Fraction(changes, 1 << f.n)
    params = params or params_for_distance(f.n, eps_f)
    gamma = gamma_plus(f, params)
    violated = int(f.violated_edge_counts().sum())

    if with_matching is None:
        with_matching = f.n <= MAX_MIN_LENGTH_DIMENSION
    r = None
    counts = {"distance_changes": changes, "violated_edges": violated, "gamma_matching": gamma.size}
    if with_matching:
        matching = min_length_max_matching(f)
        r = matching.avg_length
        counts["matching_size"] = matching.size
        counts["matching_total_length"] = matching.total_length

    report = MetricsReport(
        n=f.n, eps_f=eps_f, phi_plus=phi_plus(f), gamma_plus=gamma.value,
        avg_sensitivity=average_sensitivity(f), boundary_plus=directed_boundary(f),
        r=r, params=params, counts=counts,
    )
    debug(f"metrics n={f.n}: eps_f={eps_f} phi+={report.phi_plus} gamma+={report.gamma_plus}")
    return report
