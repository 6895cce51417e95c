"""
Violated edges and violating pairs of a truth table
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Tuple

import numpy as np

from ..boolfn.truthtable import TruthTable
from ..hypercube.point import check_dimension, distance, submasks

# Comparable-pair enumeration walks all submasks (3^n work)
MAX_PAIR_DIMENSION = 16

Pair = Tuple[int, int]


def _dimension_masks(n: int, i: int) -> np.ndarray:
    """Lower endpoints of all dimension-i edges, aligned with TruthTable.dimension_view"""
    cube = np.arange(1 << n, dtype=np.int64).reshape(1 << (n - 1 - i), 2, 1 << i)
    return cube[:, 0, :].ravel()


def violated_edges_by_dimension(f: TruthTable) -> List[List[Pair]]:
    """For each dimension i the directed edges (x, x + e_i) with f(x) = 1, f(x + e_i) = 0"""
    result = []
    for i in range(f.n):
        lower, upper = f.dimension_view(i)
        starts = _dimension_masks(f.n, i)[lower > upper]
        result.append([(int(x), int(x) | (1 << i)) for x in starts])
    return result


def violated_edges(f: TruthTable) -> Tuple[List[Pair], Fraction]:
    """All violated edges (sorted) and Phi+ = count / 2^{n-1}"""
    edges = sorted(e for per_dim in violated_edges_by_dimension(f) for e in per_dim)
    return edges, Fraction(len(edges), 1 << (f.n - 1))


def phi_plus(f: TruthTable) -> Fraction:
    return Fraction(int(f.violated_edge_counts().sum()), 1 << (f.n - 1))


def average_sensitivity(f: TruthTable) -> Fraction:
    """I(f): bichromatic edges / 2^{n-1}"""
    return Fraction(int(f.bichromatic_edge_counts().sum()), 1 << (f.n - 1))


def directed_boundary(f: TruthTable) -> int:
    """|boundary+(S)|: points with f = 1 that have a violated outgoing edge"""
    on_boundary = np.zeros(1 << f.n, dtype=bool)
    for i in range(f.n):
        lower, upper = f.dimension_view(i)
        on_boundary[_dimension_masks(f.n, i)[lower > upper]] = True
    return int(np.count_nonzero(on_boundary))


def iter_violating_pairs(f: TruthTable) -> Iterator[Pair]:
    """All x ≺ y (x != y) with f(x) = 1 and f(y) = 0, by submask walk from each zero"""
    check_dimension(f.n, MAX_PAIR_DIMENSION)
    values = f.values
    for y in f.zeros():
        y = int(y)
        for x in submasks(y):
            if x != y and values[x]:
                yield x, y


@dataclass
class ViolationGraph:
    """Bipartite graph between f = 1 points and f = 0 points above them"""
    n: int
    ones: List[int]
    zeros: List[int]
    adjacency: Dict[int, List[int]] = field(repr=False)

    @classmethod
    def build(cls, f: TruthTable) -> 'ViolationGraph':
        adjacency: Dict[int, List[int]] = {}
        for x, y in iter_violating_pairs(f):
            adjacency.setdefault(x, []).append(y)
        for targets in adjacency.values():
            targets.sort()
        return cls(f.n, [int(v) for v in f.ones()], [int(v) for v in f.zeros()],
                   dict(sorted(adjacency.items())))

    def pairs(self) -> Iterator[Pair]:
        for x, targets in self.adjacency.items():
            for y in targets:
                yield x, y

    @property
    def num_pairs(self) -> int:
        return sum(len(t) for t in self.adjacency.values())

    def length(self, pair: Pair) -> int:
        return distance(*pair)

    def is_edge(self, x: int, y: int) -> bool:
        return y in self.adjacency.get(x, ())
