"""
Alternating sequences between dimension-i edges and a violation matching

H is the perfect matching of dimension-i hypercube edges, M a minimum-length
maximum violation matching and X the endpoints of the M pairs crossing
dimension i.  S_x starts at x in X and alternates H and M steps until an H
step lands in X or on a point M leaves unmatched.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Set, Tuple

from ..boolfn.truthtable import TruthTable
from ..metrics.matching import Matching, maximum_violation_matching_size
from ..util.logging import debug, warning

Edge = Tuple[int, int]


class Termination:
    REACHED_X = "reached-X"
    UNMATCHED = "unmatched"
    CYCLE = "cycle"


@dataclass
class AlternatingSequence:
    origin: int
    steps: List[int]
    labels: List[str]
    termination: str
    violated_edges: List[Edge] = field(default_factory=list)

    @property
    def has_violated_edge(self) -> bool:
        return bool(self.violated_edges)

    def key(self) -> frozenset:
        return frozenset(self.steps)


@dataclass
class AlternatingReport:
    dimension: int
    sequences: List[AlternatingSequence]
    matched_pairs: int
    distinct_violated_edges: Set[Edge]

    @property
    def all_contain_violation(self) -> bool:
        return all(s.has_violated_edge for s in self.sequences)

    @property
    def count_pass(self) -> bool:
        return len(self.distinct_violated_edges) >= self.matched_pairs

    @property
    def passed(self) -> bool:
        return self.all_contain_violation and self.count_pass


def _h_edge(u: int, bit: int) -> Edge:
    return (u & ~bit, u | bit)


def build_sequence(f: TruthTable, matching: Matching, x: int, i: int,
                   endpoints: Set[int]) -> AlternatingSequence:
    bit = 1 << i
    steps, labels = [x], ["start"]
    visited = {x}
    violated = []
    current = x
    while True:
        h = current ^ bit
        if h in visited:
            termination = Termination.CYCLE
            break
        lower, upper = _h_edge(current, bit)
        if f(lower) == 1 and f(upper) == 0:
            violated.append((lower, upper))
        steps.append(h)
        labels.append("H")
        visited.add(h)
        if h in endpoints:
            termination = Termination.REACHED_X
            break
        if not matching.is_matched(h):
            termination = Termination.UNMATCHED
            break
        m = matching.partner[h]
        if m in visited:
            termination = Termination.CYCLE
            break
        steps.append(m)
        labels.append("M")
        visited.add(m)
        current = m
    return AlternatingSequence(x, steps, labels, termination, violated)


def alternating_sequences(f: TruthTable, matching: Matching, i: int,
                          check_maximum: Optional[bool] = None) -> AlternatingReport:
    """Build S_x for every x in X and check the violated-edge count against |M_i|"""
    if not 0 <= i < f.n:
        raise ValueError(f"dimension {i} out of range for n={f.n}")
    if not matching.is_valid_for(f):
        raise ValueError("matching contains a pair that is not a violation of f")
    if check_maximum is None:
        check_maximum = f.n <= 10
    if check_maximum and matching.size != maximum_violation_matching_size(f):
        raise ValueError("matching is not a maximum violation matching")

    crossing = matching.pairs_crossing(i)
    endpoints = {v for pair in crossing for v in pair}
    sequences = []
    seen = set()
    for x in sorted(endpoints):
        sequence = build_sequence(f, matching, x, i, endpoints)
        if sequence.key() in seen:
            continue
        seen.add(sequence.key())
        sequences.append(sequence)

    distinct = {e for s in sequences for e in s.violated_edges}
    report = AlternatingReport(i, sequences, len(crossing), distinct)
    if not report.passed:
        warning(f"alternating sequences in dimension {i}: {len(distinct)} violated edges "
                f"for |M_i| = {len(crossing)}, all-contain={report.all_contain_violation}")
    else:
        debug(f"dimension {i}: {len(sequences)} sequences, {len(distinct)} violated H-edges")
    return report
