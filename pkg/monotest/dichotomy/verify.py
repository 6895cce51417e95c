"""
Exact verification of the dichotomy inequality and the lemmas behind it
"""
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx

from ..boolfn.truthtable import TruthTable
from ..hypercube.params import TesterParams, params_for_distance
from ..hypercube.point import check_dimension, popcount, precedes
from ..metrics.distance import monotone_repair
from ..metrics.matching import Matching, gamma_plus, min_length_max_matching
from ..metrics.report import format_fraction
from ..metrics.violations import phi_plus
from ..util.logging import debug, warning
from .alternating import alternating_sequences
from .routing import RoutingError, RoutingInstance, lehman_ron_route, verify_path_system

MAX_DICHOTOMY_DIMENSION = 12
MAX_EXTRACTION_DIMENSION = 10

Edge = Tuple[int, int]


@dataclass
class PerDimensionCheck:
    violated: List[int]
    matched: List[int]

    @property
    def passes(self) -> List[bool]:
        return [v >= m for v, m in zip(self.violated, self.matched)]

    @property
    def passed(self) -> bool:
        return all(self.passes)


def per_dimension_check(f: TruthTable, matching: Optional[Matching] = None) -> PerDimensionCheck:
    """Violated edges across each dimension i against |M_i|"""
    check_dimension(f.n, MAX_DICHOTOMY_DIMENSION)
    matching = matching or min_length_max_matching(f)
    violated = [int(c) for c in f.violated_edge_counts()]
    result = PerDimensionCheck(violated, matching.per_dimension())
    for i, ok in enumerate(result.passes):
        if not ok:
            warning(f"dimension {i}: {result.violated[i]} violated edges < |M_i| = {result.matched[i]}")
    return result


@dataclass
class DichotomyReport:
    n: int
    eps_f: Fraction
    phi_plus: Fraction
    gamma_plus: Fraction
    r: Fraction
    matching_size: int
    per_dimension: PerDimensionCheck

    @property
    def product(self) -> Fraction:
        return self.phi_plus * self.gamma_plus

    @property
    def bound(self) -> Fraction:
        return self.eps_f ** 2 / 32

    @property
    def passed(self) -> bool:
        return self.eps_f == 0 or self.product >= self.bound

    @property
    def gamma_bound_pass(self) -> bool:
        """Gamma+ >= eps_f / (32 r)"""
        return self.r == 0 or self.gamma_plus >= self.eps_f / (32 * self.r)

    @property
    def phi_bound_pass(self) -> bool:
        """Phi+ >= r eps_f"""
        return self.r == 0 or self.phi_plus >= self.r * self.eps_f

    @property
    def per_dim_pass(self) -> bool:
        return self.r == 0 or self.per_dimension.passed

    @property
    def all_pass(self) -> bool:
        return self.passed and self.gamma_bound_pass and self.phi_bound_pass and self.per_dim_pass

    def to_row(self) -> dict:
        return {
            "n": self.n,
            "eps_f": format_fraction(self.eps_f),
            "phi_plus": format_fraction(self.phi_plus),
            "gamma_plus": format_fraction(self.gamma_plus),
            "r": format_fraction(self.r),
            "product": format_fraction(self.product),
            "bound": format_fraction(self.bound),
            "pass": self.passed,
            "gamma_bound_pass": self.gamma_bound_pass,
            "phi_bound_pass": self.phi_bound_pass,
            "per_dim_pass": self.per_dim_pass,
        }


def verify_dichotomy(f: TruthTable, matching: Optional[Matching] = None) -> DichotomyReport:
    check_dimension(f.n, MAX_DICHOTOMY_DIMENSION)
    changes, _ = monotone_repair(f)
    eps_f = Fraction(changes, 1 << f.n)
    params = params_for_distance(f.n, eps_f)
    matching = matching or min_length_max_matching(f)
    report = DichotomyReport(
        n=f.n, eps_f=eps_f, phi_plus=phi_plus(f), gamma_plus=gamma_plus(f, params).value,
        r=matching.avg_length, matching_size=matching.size,
        per_dimension=per_dimension_check(f, matching),
    )
    if not report.all_pass:
        warning(f"dichotomy check failed at n={f.n}: {report.to_row()}")
    return report


@dataclass
class ExtractionResult:
    """Violated-edge matching E built from routed paths, with the intermediate multiset F"""
    matching_size: int
    r: Fraction
    groups: Dict[Tuple[int, int], int]
    multiset: List[Edge]
    edges: List[Edge]
    max_degree: int = 0
    problems: List[str] = field(default_factory=list)

    @property
    def required(self) -> int:
        """ceil(|M| / (16 r))"""
        if self.r == 0:
            return 0
        return math.ceil(Fraction(self.matching_size) / (16 * self.r))

    @property
    def multiset_pass(self) -> bool:
        return 4 * len(self.multiset) >= self.matching_size

    @property
    def size_pass(self) -> bool:
        return len(self.edges) >= self.required

    @property
    def passed(self) -> bool:
        return self.multiset_pass and self.size_pass and not self.problems


def short_middle_groups(matching: Matching, params: TesterParams) -> Dict[Tuple[int, int], List[Edge]]:
    """Pairs of M with both levels in the middle layers and level gap at most 2r, keyed by levels"""
    r = matching.avg_length
    grouped: Dict[Tuple[int, int], List[Edge]] = defaultdict(list)
    for x, y in matching.pairs:
        a, b = popcount(x), popcount(y)
        if params.in_middle(a) and params.in_middle(b) and b - a <= 2 * r:
            grouped[(a, b)].append((x, y))
    return dict(sorted(grouped.items()))


def _first_violated_edge(f: TruthTable, path: List[int]) -> Edge:
    for u, v in zip(path, path[1:]):
        if f(u) == 1 and f(v) == 0:
            return u, v
    raise RoutingError(f"path {path} carries no violated edge")


def _edge_matching(edges: List[Edge]) -> List[Edge]:
    """A maximum matching inside the (deduplicated) edge multiset"""
    if not edges:
        return []
    graph = nx.Graph()
    graph.add_edges_from(edges)
    even = [v for v in graph if popcount(v) % 2 == 0]
    matched = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=even)
    return sorted((min(u, v), max(u, v)) for u, v in matched.items() if popcount(u) % 2 == 0)


def extract_violated_edge_matching(f: TruthTable, matching: Optional[Matching] = None,
                                   params: Optional[TesterParams] = None) -> ExtractionResult:
    """Route the short middle-layer pairs of M layer by layer and keep one violated edge per path"""
    check_dimension(f.n, MAX_EXTRACTION_DIMENSION)
    matching = matching or min_length_max_matching(f)
    if not matching.is_valid_for(f):
        raise ValueError("matching contains a pair that is not a violation of f")
    r = matching.avg_length
    if params is None:
        changes, _ = monotone_repair(f)
        params = params_for_distance(f.n, Fraction(changes, 1 << f.n))

    grouped = short_middle_groups(matching, params)
    multiset: List[Edge] = []
    for levels in sorted(grouped):
        instance = RoutingInstance(f.n, grouped[levels])
        result = lehman_ron_route(instance)
        if not result.success:
            raise RoutingError(f"layers {levels}: found {len(result.paths)} of {instance.size} paths")
        problems = verify_path_system(instance, result.paths)
        if problems:
            raise RoutingError(f"layers {levels}: invalid path system: {problems}")
        multiset.extend(_first_violated_edge(f, path) for path in result.paths)

    degree = Counter(v for edge in multiset for v in edge)
    edges = _edge_matching(sorted(set(multiset)))
    problems = []
    for u, v in edges:
        if not (precedes(u, v) and f(u) == 1 and f(v) == 0):
            problems.append(f"edge ({u}, {v}) is not violated")
        if not (params.in_middle(popcount(u)) and params.in_middle(popcount(v))):
            problems.append(f"edge ({u}, {v}) leaves the middle layers")

    result = ExtractionResult(
        matching_size=matching.size, r=r,
        groups={levels: len(pairs) for levels, pairs in sorted(grouped.items())},
        multiset=multiset, edges=edges,
        max_degree=max(degree.values(), default=0), problems=problems,
    )
    debug(f"extraction: |M|={matching.size} |F|={len(multiset)} |E|={len(edges)} need {result.required}")
    if not result.passed:
        warning(f"extraction below bound: |F|={len(multiset)} |E|={len(edges)} "
                f"required={result.required} problems={problems}")
    return result


def _crosses(first: Edge, second: Edge) -> bool:
    (x, y), (x2, y2) = first, second
    if not precedes(x | x2, y & y2):
        return False
    a, b, a2, b2 = popcount(x), popcount(y), popcount(x2), popcount(y2)
    return a < a2 < b < b2 or a2 < a < b2 < b


def count_crossing_pairs(matching: Matching) -> int:
    """Diagnostic count of crossing pairs of matched pairs"""
    pairs = matching.pairs
    return sum(1 for k, first in enumerate(pairs) for second in pairs[k + 1:]
               if _crosses(first, second))


def verify_lemmas(f: TruthTable) -> dict:
    """Every check on one function: dichotomy, extraction, alternating sequences"""
    matching = min_length_max_matching(f)
    report = verify_dichotomy(f, matching)
    row = report.to_row()
    if report.r == 0:
        row.update({"extraction_pass": True, "alternating_pass": True, "crossing_pairs": 0})
        return row
    if f.n > MAX_EXTRACTION_DIMENSION:
        row.update({"extraction_pass": None, "alternating_pass": None, "crossing_pairs": None})
        return row
    extraction = extract_violated_edge_matching(f, matching)
    alternating = [alternating_sequences(f, matching, i, check_maximum=False) for i in range(f.n)]
    row.update({
        "extraction_pass": extraction.passed,
        "alternating_pass": all(a.passed for a in alternating),
        "crossing_pairs": count_crossing_pairs(matching),
    })
    return row
