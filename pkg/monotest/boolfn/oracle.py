"""
Query oracle for monotest
Wraps a function behind a query counter, the resource testers are measured by
"""
from dataclasses import dataclass
from typing import Callable, List, Optional, Union

from ..hypercube.point import Point, check_dimension
from .truthtable import TruthTable


@dataclass(frozen=True)
class FunctionRule:
    """A Boolean function given by a rule instead of a materialized table (any n)"""
    n: int
    rule: Callable[[int], int]
    name: str = "rule"

    def __post_init__(self):
        check_dimension(self.n)

    def __call__(self, x: int) -> int:
        return int(self.rule(x)) & 1


BooleanFunction = Union[TruthTable, FunctionRule]


class QueryOracle:
    """Function access that counts (and optionally logs) every evaluation"""

    def __init__(self, function: BooleanFunction, keep_log: bool = False):
        self.function = function
        self.n = function.n
        self.query_count = 0
        self.query_log: Optional[List[int]] = [] if keep_log else None

    def evaluate(self, x: Union[Point, int]) -> int:
        """Return f(x) and charge one query"""
        if isinstance(x, Point):
            if x.n != self.n:
                raise ValueError(f"point of dimension {x.n} queried on a dimension-{self.n} oracle")
            mask = x.bits
        else:
            mask = int(x)
            if mask < 0 or mask >> self.n:
                raise ValueError(f"point {mask:#x} does not fit in dimension {self.n}")
        self.query_count += 1
        if self.query_log is not None:
            self.query_log.append(mask)
        return self.function(mask)

    def fresh(self) -> 'QueryOracle':
        """A new oracle over the same function with a zero counter (one per trial)"""
        return QueryOracle(self.function, keep_log=self.query_log is not None)


def evaluate(oracle: QueryOracle, x: Union[Point, int]) -> int:
    """Module-level form of QueryOracle.evaluate"""
    return oracle.evaluate(x)
