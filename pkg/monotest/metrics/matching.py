"""
Matchings of violating pairs and of middle-layer violated edges
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np

from ..boolfn.truthtable import TruthTable
from ..hypercube.params import TesterParams
from ..hypercube.point import check_dimension, distance, popcount, precedes
from ..util.logging import debug
from .violations import MAX_PAIR_DIMENSION, ViolationGraph, violated_edges

# Min-cost flow over the full violation graph
MAX_MIN_LENGTH_DIMENSION = 12
MAX_GAMMA_DIMENSION = 24

Pair = Tuple[int, int]


@dataclass
class Matching:
    """Vertex-disjoint violating pairs (x, y), x ≺ y, f(x) = 1, f(y) = 0"""
    n: int
    pairs: List[Pair]
    partner: Dict[int, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.pairs = sorted(self.pairs)
        self.partner = {}
        for x, y in self.pairs:
            if x in self.partner or y in self.partner:
                raise ValueError(f"pair ({x}, {y}) reuses a matched vertex")
            self.partner[x] = y
            self.partner[y] = x

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def total_length(self) -> int:
        return sum(distance(x, y) for x, y in self.pairs)

    @property
    def avg_length(self) -> Fraction:
        """r = total_length / size, 0 for an empty matching"""
        if not self.pairs:
            return Fraction(0)
        return Fraction(self.total_length, self.size)

    def per_dimension(self) -> List[int]:
        """M_i = number of pairs with x_i = 0 and y_i = 1"""
        counts = [0] * self.n
        for x, y in self.pairs:
            diff = x ^ y
            for i in range(self.n):
                if (diff >> i) & 1:
                    counts[i] += 1
        return counts

    def pairs_crossing(self, i: int) -> List[Pair]:
        bit = 1 << i
        return [(x, y) for x, y in self.pairs if not x & bit and y & bit]

    def is_matched(self, v: int) -> bool:
        return v in self.partner

    def is_valid_for(self, f: TruthTable) -> bool:
        """Every pair is a violation of f"""
        return all(x != y and precedes(x, y) and f(x) == 1 and f(y) == 0 for x, y in self.pairs)

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "total_length": self.total_length,
            "avg_length": f"{self.avg_length.numerator}/{self.avg_length.denominator}",
            "per_dimension": self.per_dimension(),
        }


def greedy_maximal_violation_matching(f: TruthTable, rng: np.random.Generator,
                                      graph: Optional[ViolationGraph] = None) -> Matching:
    """A maximal matching of the violation graph, scanning pairs in random order"""
    check_dimension(f.n, MAX_PAIR_DIMENSION)
    graph = graph or ViolationGraph.build(f)
    pairs = list(graph.pairs())
    used = set()
    chosen = []
    for k in rng.permutation(len(pairs)):
        x, y = pairs[int(k)]
        if x in used or y in used:
            continue
        used.add(x)
        used.add(y)
        chosen.append((x, y))
    return Matching(f.n, chosen)


def min_length_max_matching(f: TruthTable, graph: Optional[ViolationGraph] = None) -> Matching:
    """Maximum-cardinality violation matching of least total length"""
    check_dimension(f.n, MAX_MIN_LENGTH_DIMENSION)
    graph = graph or ViolationGraph.build(f)
    if graph.num_pairs == 0:
        return Matching(f.n, [])
    network = nx.DiGraph()
    network.add_node("source")
    network.add_node("sink")
    for x, y in graph.pairs():
        network.add_edge(("one", x), ("zero", y), capacity=1, weight=graph.length((x, y)))
        network.add_edge("source", ("one", x), capacity=1, weight=0)
        network.add_edge(("zero", y), "sink", capacity=1, weight=0)
    flow = nx.max_flow_min_cost(network, "source", "sink")

    pairs = []
    for node, out_flow in flow.items():
        if not (isinstance(node, tuple) and node[0] == "one"):
            continue
        for target, amount in out_flow.items():
            if amount > 0:
                pairs.append((node[1], target[1]))
    matching = Matching(f.n, pairs)
    debug(f"min-length matching for n={f.n}: size={matching.size} total={matching.total_length}")
    return matching


def maximum_violation_matching_size(f: TruthTable, graph: Optional[ViolationGraph] = None) -> int:
    """Unweighted maximum matching size of the violation graph"""
    graph = graph or ViolationGraph.build(f)
    bipartite = nx.Graph()
    tops = [("one", x) for x in graph.adjacency]
    bipartite.add_nodes_from(tops)
    bipartite.add_edges_from((("one", x), ("zero", y)) for x, y in graph.pairs())
    return len(nx.bipartite.hopcroft_karp_matching(bipartite, top_nodes=tops)) // 2


@dataclass
class GammaPlus:
    """Largest matching of violated edges with both endpoints in the middle layers"""
    value: Fraction
    edges: List[Pair]

    @property
    def size(self) -> int:
        return len(self.edges)


def gamma_plus(f: TruthTable, params: TesterParams) -> GammaPlus:
    if params.n != f.n:
        raise ValueError(f"params dimension {params.n} does not match function dimension {f.n}")
    check_dimension(f.n, MAX_GAMMA_DIMENSION)
    edges, _ = violated_edges(f)
    middle = [(x, y) for x, y in edges
              if params.in_middle(popcount(x)) and params.in_middle(popcount(y))]
    graph = nx.Graph()
    graph.add_edges_from(middle)
    even = [v for v in graph if popcount(v) % 2 == 0]
    matched = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=even) if middle else {}
    witness = sorted((min(u, v), max(u, v)) for u, v in matched.items() if popcount(u) % 2 == 0)
    return GammaPlus(Fraction(len(witness), 1 << f.n), witness)
