"""
Vertex-disjoint ascending paths between two layers of the hypercube

Sources lie in layer i, sinks in layer j > i, and the instance pairs every
source with a sink above it.  Disjoint paths are found with a unit vertex
capacity maximum flow restricted to vertices that lie above some source and
below some sink.
"""
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Set, Tuple

import networkx as nx
from networkx.algorithms.flow import dinitz

from ..hypercube.point import check_dimension, popcount, precedes
from ..util.logging import debug, error

MAX_ROUTING_DIMENSION = 16

SOURCE = "source"
SINK = "sink"

Path = List[int]


class RoutingError(RuntimeError):
    """A routing instance did not receive a complete disjoint path system"""


@dataclass
class RoutingInstance:
    """Paired sources (layer `lower`) and sinks (layer `upper`) with s ≺ r per pair"""
    n: int
    pairs: List[Tuple[int, int]]
    lower: int = field(init=False)
    upper: int = field(init=False)

    def __post_init__(self):
        check_dimension(self.n, MAX_ROUTING_DIMENSION)
        if not self.pairs:
            raise ValueError("routing instance needs at least one pair")
        self.pairs = sorted(self.pairs)
        self.lower = popcount(self.pairs[0][0])
        self.upper = popcount(self.pairs[0][1])
        if self.lower >= self.upper:
            raise ValueError(f"sink layer {self.upper} must lie above source layer {self.lower}")
        for s, r in self.pairs:
            if s >> self.n or r >> self.n:
                raise ValueError(f"pair ({s}, {r}) has bits beyond dimension {self.n}")
            if popcount(s) != self.lower or popcount(r) != self.upper:
                raise ValueError(f"pair ({s}, {r}) does not lie on layers {self.lower} -> {self.upper}")
            if not precedes(s, r):
                raise ValueError(f"source {s} is not below its sink {r}")
        if len(self.sources) != len(self.pairs) or len(self.sinks) != len(self.pairs):
            raise ValueError("sources and sinks must be distinct")

    @property
    def sources(self) -> Set[int]:
        return {s for s, _ in self.pairs}

    @property
    def sinks(self) -> Set[int]:
        return {r for _, r in self.pairs}

    @property
    def size(self) -> int:
        return len(self.pairs)


@dataclass
class RoutingResult:
    instance: RoutingInstance
    paths: List[Path]

    @property
    def success(self) -> bool:
        return len(self.paths) == self.instance.size


def _region(instance: RoutingInstance) -> Set[int]:
    """Vertices above some source and below some sink"""
    sinks = list(instance.sinks)
    region = set(instance.sources)
    queue = deque(region)
    while queue:
        v = queue.popleft()
        if popcount(v) == instance.upper:
            continue
        for i in range(instance.n):
            w = v | (1 << i)
            if w == v or w in region:
                continue
            if any(precedes(w, r) for r in sinks):
                region.add(w)
                queue.append(w)
    return region


def _flow_network(instance: RoutingInstance) -> nx.DiGraph:
    region = _region(instance)
    network = nx.DiGraph()
    for v in sorted(region):
        network.add_edge((v, "in"), (v, "out"), capacity=1)
        for i in range(instance.n):
            w = v | (1 << i)
            if w != v and w in region:
                network.add_edge((v, "out"), (w, "in"), capacity=1)
    for s in sorted(instance.sources):
        network.add_edge(SOURCE, (s, "in"), capacity=1)
    for r in sorted(instance.sinks):
        network.add_edge((r, "out"), SINK, capacity=1)
    return network


def _decompose(instance: RoutingInstance, flow: Dict) -> List[Path]:
    paths = []
    for s in sorted(instance.sources):
        if flow[SOURCE].get((s, "in"), 0) <= 0:
            continue
        path = [s]
        current = s
        while popcount(current) < instance.upper:
            current = min(w for (w, _), amount in flow[(current, "out")].items() if amount > 0)
            path.append(current)
        paths.append(path)
    return paths


def lehman_ron_route(instance: RoutingInstance) -> RoutingResult:
    """Maximum set of vertex-disjoint ascending source-to-sink paths"""
    network = _flow_network(instance)
    value, flow = nx.maximum_flow(network, SOURCE, SINK, flow_func=dinitz)
    paths = _decompose(instance, flow)
    result = RoutingResult(instance, paths)
    if result.success:
        debug(f"routed {value} disjoint paths from layer {instance.lower} to {instance.upper}")
    else:
        error(f"routing found {value} of {instance.size} paths "
              f"between layers {instance.lower} and {instance.upper}")
    return result


def verify_path_system(instance: RoutingInstance, paths: Sequence[Path]) -> List[str]:
    """Independent check of a path system; returns the list of problems found"""
    problems = []
    if len(paths) != instance.size:
        problems.append(f"expected {instance.size} paths, got {len(paths)}")
    seen: Set[int] = set()
    for index, path in enumerate(paths):
        if not path:
            problems.append(f"path {index} is empty")
            continue
        for u, v in zip(path, path[1:]):
            if not (precedes(u, v) and popcount(v) == popcount(u) + 1):
                problems.append(f"path {index} does not ascend along an edge at {u} -> {v}")
        overlap = seen.intersection(path)
        if overlap or len(set(path)) != len(path):
            problems.append(f"path {index} shares vertices {sorted(overlap)}")
        seen.update(path)
    if {p[0] for p in paths if p} != instance.sources:
        problems.append("path starts do not equal the source set")
    if {p[-1] for p in paths if p} != instance.sinks:
        problems.append("path ends do not equal the sink set")
    return problems
