"""
Named Boolean function families
Builds the functions used throughout experiments and tests, plus the
monotone-function enumeration that serves as a brute-force oracle
"""
import inspect
import math
from typing import Callable, Dict, List

import numpy as np

from ..hypercube.point import MAX_TABLE_DIMENSION, check_dimension, popcount
from .oracle import BooleanFunction, FunctionRule
from .truthtable import TruthTable

# Largest n for which enumerate_monotone is allowed (M(5) = 7581)
MAX_ENUMERATION_DIMENSION = 5


def _levels(n: int) -> np.ndarray:
    """popcount of every mask 0..2^n - 1"""
    check_dimension(n, MAX_TABLE_DIMENSION)
    levels = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        levels[1 << i:1 << (i + 1)] = levels[:1 << i] + 1
    return levels


def _indices(n: int) -> np.ndarray:
    check_dimension(n, MAX_TABLE_DIMENSION)
    return np.arange(1 << n, dtype=np.int64)


def constant(n: int, b: int) -> TruthTable:
    return TruthTable.from_values(np.full(1 << n, b & 1, dtype=np.uint8), n)


def dictator(n: int, i: int) -> TruthTable:
    """f(x) = x_i"""
    if not 0 <= i < n:
        raise ValueError(f"coordinate {i} out of range for n={n}")
    return TruthTable.from_values((_indices(n) >> i) & 1, n)


def anti_dictator(n: int, i: int) -> TruthTable:
    """f(x) = 1 - x_i"""
    if not 0 <= i < n:
        raise ValueError(f"coordinate {i} out of range for n={n}")
    return TruthTable.from_values(1 - ((_indices(n) >> i) & 1), n)


def anti_majority(n: int) -> TruthTable:
    """f(x) = 1 iff |x| <= n/2"""
    return TruthTable.from_values((2 * _levels(n) <= n).astype(np.uint8), n)


def majority(n: int) -> TruthTable:
    """f(x) = 1 iff |x| > n/2"""
    return TruthTable.from_values((2 * _levels(n) > n).astype(np.uint8), n)


def two_block_example(n: int) -> TruthTable:
    """Function on n + 1 coordinates whose violations all cross coordinate 0

    Writing a point as (b, x) with b = coordinate 0 and x the remaining n
    coordinates: f(0, x) = 0 iff |x| <= n/2 - 2 sqrt(n), f(1, x) = 0 iff
    |x| <= n/2 + 2 sqrt(n).
    """
    check_dimension(n + 1, MAX_TABLE_DIMENSION)
    masks = _indices(n + 1)
    lead = masks & 1
    rest = _levels(n + 1) - lead
    threshold = np.where(lead == 0, n / 2 - 2 * math.sqrt(n), n / 2 + 2 * math.sqrt(n))
    return TruthTable.from_values((rest > threshold).astype(np.uint8), n + 1)


def random_function(n: int, seed: int) -> TruthTable:
    """Uniformly random function, deterministic given seed"""
    rng = np.random.default_rng(seed)
    return TruthTable.from_values(rng.integers(0, 2, size=1 << n, dtype=np.uint8), n)


def random_monotone(n: int, seed: int) -> TruthTable:
    """Upward closure of a random seed set, deterministic given seed

    Between 0 and 2n seeds are drawn uniformly from the cube; f(x) = 1 iff x
    lies above some seed.  Not uniform over monotone functions.
    """
    rng = np.random.default_rng(seed)
    masks = _indices(n)
    values = np.zeros(1 << n, dtype=bool)
    for s in rng.integers(0, 1 << n, size=int(rng.integers(0, 2 * n + 1))):
        values |= (masks & int(s)) == int(s)
    return TruthTable.from_values(values.astype(np.uint8), n)


def enumerate_monotone(n: int) -> List[int]:
    """All monotone functions on n <= 5 variables as truth-table integer codes

    f splits on the top coordinate into (f0, f1); f is monotone iff both
    halves are and f0 <= f1 pointwise.
    """
    check_dimension(n, MAX_ENUMERATION_DIMENSION)
    codes = [0b00, 0b10, 0b11]  # n = 1: constant 0, dictator, constant 1
    for k in range(2, n + 1):
        half = 1 << (k - 1)
        codes = [low | (high << half) for low in codes for high in codes if low & ~high == 0]
    return codes


def brute_force_distance(f: TruthTable) -> int:
    """Minimum Hamming distance to a monotone function by enumeration (n <= 5)"""
    code = f.to_int()
    return min(popcount(code ^ g) for g in enumerate_monotone(f.n))


def anti_majority_rule(n: int) -> FunctionRule:
    """anti_majority without a table, for dimensions beyond the table limit"""
    return FunctionRule(n, lambda x: int(2 * popcount(x) <= n), "anti_majority")


def anti_dictator_rule(n: int, i: int) -> FunctionRule:
    if not 0 <= i < n:
        raise ValueError(f"coordinate {i} out of range for n={n}")
    return FunctionRule(n, lambda x: 1 - ((x >> i) & 1), "anti_dictator")


def dictator_rule(n: int, i: int) -> FunctionRule:
    if not 0 <= i < n:
        raise ValueError(f"coordinate {i} out of range for n={n}")
    return FunctionRule(n, lambda x: (x >> i) & 1, "dictator")


def majority_rule(n: int) -> FunctionRule:
    return FunctionRule(n, lambda x: int(2 * popcount(x) > n), "majority")


def constant_rule(n: int, b: int) -> FunctionRule:
    if b not in (0, 1):
        raise ValueError(f"constant value must be 0 or 1, got {b}")
    return FunctionRule(n, lambda x: b, "constant")


# Family name -> builder taking (n, *args)
FAMILIES: Dict[str, Callable[..., TruthTable]] = {
    "constant": constant,
    "dictator": dictator,
    "anti_dictator": anti_dictator,
    "anti_majority": anti_majority,
    "majority": majority,
    "two_block": two_block_example,
    "random": random_function,
    "random_monotone": random_monotone,
}

# Families that can also be evaluated without a table
RULES: Dict[str, Callable[..., FunctionRule]] = {
    "constant": constant_rule,
    "dictator": dictator_rule,
    "anti_dictator": anti_dictator_rule,
    "anti_majority": anti_majority_rule,
    "majority": majority_rule,
}


def create_function(spec: str, n: int = None) -> BooleanFunction:
    """Build a family member from 'name[:arg,...]'

    The first argument is the dimension; when omitted, `n` is used.  Above
    the table limit, families in RULES come back as a FunctionRule.
    Examples: 'anti_dictator:16,0', 'random:8,42', 'anti_majority' with n=13.
    """
    name, _, arg_text = spec.partition(":")
    name = name.strip()
    if name not in FAMILIES:
        raise ValueError(f"unknown function family {name!r}; known: {', '.join(sorted(FAMILIES))}")
    try:
        args = [int(a) for a in arg_text.split(",") if a.strip()]
    except ValueError:
        raise ValueError(f"family arguments must be integers: {spec!r}")
    if not args:
        if n is None:
            raise ValueError(f"family {name!r} needs a dimension (--n or '{name}:<n>')")
        args = [n]
    builder = FAMILIES[name]
    if args[0] > MAX_TABLE_DIMENSION:
        if name not in RULES:
            raise ValueError(f"family {name!r} needs a truth table, so n <= {MAX_TABLE_DIMENSION}")
        builder = RULES[name]
    try:
        inspect.signature(builder).bind(*args)
    except TypeError:
        raise ValueError(f"wrong number of arguments for family {name!r}: {spec!r}")
    return builder(*args)
