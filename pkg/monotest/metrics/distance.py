"""
Exact distance to monotonicity via a minimum s-t cut

Source side = points labeled 1 in the repaired function.  source -> x has
capacity 1 when f(x) = 1 (cut iff x is relabeled 0), x -> sink has capacity
1 when f(x) = 0 (cut iff x is relabeled 1), and every covering edge
x -> x + e_i has capacity 2^n + 1 so no finite cut puts x on the 1-side and
x + e_i on the 0-side.
"""
from fractions import Fraction
from typing import Tuple

import networkx as nx
import numpy as np
from networkx.algorithms.flow import dinitz

from ..boolfn.truthtable import TruthTable
from ..hypercube.point import check_dimension
from ..util.logging import debug

# Largest dimension the cut network is built for
MAX_DISTANCE_DIMENSION = 20

SOURCE = "source"
SINK = "sink"


def _cut_network(f: TruthTable) -> nx.DiGraph:
    n = f.n
    order_capacity = (1 << n) + 1
    graph = nx.DiGraph()
    # both terminals exist even when f is constant
    graph.add_nodes_from((SOURCE, SINK))
    values = f.values
    for x in range(1 << n):
        if values[x]:
            graph.add_edge(SOURCE, x, capacity=1)
        else:
            graph.add_edge(x, SINK, capacity=1)
        for i in range(n):
            if not (x >> i) & 1:
                graph.add_edge(x, x | (1 << i), capacity=order_capacity)
    return graph


def monotone_repair(f: TruthTable) -> Tuple[int, TruthTable]:
    """Minimum number of relabelings and a nearest monotone function"""
    check_dimension(f.n, MAX_DISTANCE_DIMENSION)
    cut_value, (one_side, _) = nx.minimum_cut(_cut_network(f), SOURCE, SINK, flow_func=dinitz)
    repaired = np.zeros(1 << f.n, dtype=np.uint8)
    for v in one_side:
        if v != SOURCE:
            repaired[v] = 1
    debug(f"min cut for n={f.n}: {cut_value} relabelings")
    return int(cut_value), TruthTable.from_values(repaired, f.n)


def distance_to_monotonicity(f: TruthTable) -> Fraction:
    """eps_f = (minimum relabelings) / 2^n, never above 1/2"""
    changes, _ = monotone_repair(f)
    return Fraction(changes, 1 << f.n)
