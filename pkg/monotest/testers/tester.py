"""
Pair testers for monotonicity
Each tester draws one comparable pair from a fixed distribution, queries
both endpoints and rejects iff the pair violates monotonicity
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..boolfn.oracle import QueryOracle
from ..hypercube.params import TesterParams
from ..hypercube.paths import draw_levels, random_point, sample_path
from ..hypercube.point import Point, precedes


@dataclass(frozen=True)
class Witness:
    """A violated pair x ≺ y with f(x) = 1, f(y) = 0"""
    x: Point
    y: Point
    fx: int
    fy: int

    def is_violation(self) -> bool:
        return (self.x.bits != self.y.bits and precedes(self.x.bits, self.y.bits)
                and self.fx == 1 and self.fy == 0)

    def to_dict(self) -> dict:
        return {"x": str(self.x), "y": str(self.y), "fx": self.fx, "fy": self.fy}


@dataclass(frozen=True)
class Verdict:
    """Outcome of one or more tester draws"""
    rejected: bool
    witness: Optional[Witness]
    queries_used: int

    def to_dict(self) -> dict:
        return {
            "rejected": self.rejected,
            "witness": self.witness.to_dict() if self.witness else None,
            "queries_used": self.queries_used,
        }


class PairTester(ABC):
    """One-sided, non-adaptive tester defined by a distribution over comparable pairs"""

    class Type:
        EDGE = "edge"
        PATH = "path"

    def __init__(self, n: int, tester_type: str):
        self.n = n
        self.type = tester_type

    @abstractmethod
    def draw(self, rng: np.random.Generator) -> Tuple[int, int]:
        """Sample a pair (lower, upper) with lower ≼ upper; never looks at f"""
        pass

    def test_once(self, oracle: QueryOracle, rng: np.random.Generator) -> Verdict:
        """Draw a pair, query it and reject iff it is a violation"""
        if oracle.n != self.n:
            raise ValueError(f"{self.type} tester for n={self.n} used on a dimension-{oracle.n} oracle")
        lower, upper = self.draw(rng)
        before = oracle.query_count
        f_lower = oracle.evaluate(lower)
        f_upper = oracle.evaluate(upper) if upper != lower else f_lower
        used = oracle.query_count - before
        if f_lower == 1 and f_upper == 0:
            witness = Witness(Point(lower, self.n), Point(upper, self.n), f_lower, f_upper)
            return Verdict(True, witness, used)
        return Verdict(False, None, used)

    @staticmethod
    def create_tester(tester_type: str, n: int, params: TesterParams = None) -> 'PairTester':
        """Factory method to create the tester of a given type"""
        if tester_type == PairTester.Type.EDGE:
            return EdgeTester(n)
        elif tester_type == PairTester.Type.PATH:
            if params is None:
                raise ValueError("the path tester needs TesterParams")
            return PathTester(params)
        raise ValueError(f"unknown tester type: {tester_type!r}")


class EdgeTester(PairTester):
    """Uniform hypercube edge; rejection probability is exactly Phi+ / n"""

    def __init__(self, n: int):
        super().__init__(n, PairTester.Type.EDGE)

    def draw(self, rng: np.random.Generator) -> Tuple[int, int]:
        # A uniform (x, i) lands on each undirected edge from both endpoints
        x = random_point(self.n, rng)
        bit = 1 << int(rng.integers(self.n))
        return x & ~bit, x | bit


class PathTester(PairTester):
    """path-tester(sigma): two middle-layer vertices of a uniform 0^n -> 1^n path"""

    def __init__(self, params: TesterParams):
        super().__init__(params.n, PairTester.Type.PATH)
        self.params = params

    def draw(self, rng: np.random.Generator) -> Tuple[int, int]:
        path = sample_path(self.n, rng)
        first, second = draw_levels(self.params, rng)
        lo, hi = min(first, second), max(first, second)
        return path.vertex(lo), path.vertex(hi)


def edge_test_once(oracle: QueryOracle, rng: np.random.Generator) -> Verdict:
    return EdgeTester(oracle.n).test_once(oracle, rng)


def path_test_once(oracle: QueryOracle, params: TesterParams, rng: np.random.Generator) -> Verdict:
    return PathTester(params).test_once(oracle, rng)
