"""
Uniform 0^n -> 1^n paths and exact path tester sampling probabilities

A path is a permutation of the coordinates; step k sets coordinate order[k],
so the path visits exactly one vertex per layer.  One path tester draw picks
a path, a first point uniformly from the middle-layer vertices X_p, and a
second point uniformly from Y_p(x) = {z in X_p : |level(z) - level(x)| >= tau}.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple, Union

import numpy as np

from .params import TesterParams
from .point import Point, check_dimension, precedes

# Exact rationals up to this dimension; log-domain floats above
EXACT_DIMENSION_LIMIT = 20

Probability = Union[Fraction, float]


@dataclass(frozen=True)
class PathSample:
    """A maximal chain 0^n = v_0 ≺ v_1 ≺ ... ≺ v_n = 1^n given by its flip order"""
    order: Tuple[int, ...]
    vertices: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(n)):
            raise ValueError(f"path order is not a permutation of 0..{n - 1}: {self.order}")
        masks = [0]
        for coordinate in self.order:
            masks.append(masks[-1] | (1 << coordinate))
        object.__setattr__(self, "vertices", tuple(masks))

    @property
    def n(self) -> int:
        return len(self.order)

    def vertex(self, level: int) -> int:
        """Mask of the path vertex at the given level"""
        return self.vertices[level]

    def point(self, level: int) -> Point:
        return Point(self.vertices[level], self.n)


def sample_path(n: int, rng: np.random.Generator) -> PathSample:
    """A uniformly random path; each of the n! paths has probability 1/n!"""
    check_dimension(n)
    return PathSample(tuple(int(c) for c in rng.permutation(n)))


def middle_points(path: PathSample, params: TesterParams) -> List[Point]:
    """X_p: the path vertices with level in I_ell, in increasing level order"""
    if params.n != path.n:
        raise ValueError(f"path dimension {path.n} does not match params dimension {params.n}")
    return [path.point(level) for level in params.levels]


def y_set(xs: List[Point], x: Point, params: TesterParams) -> List[Point]:
    """Y_p(x): members of X_p at level distance at least tau from x"""
    if x not in xs:
        raise ValueError(f"point {x} is not among the middle path vertices")
    # All members lie on one chain, so the l1 distance is the level gap
    return [z for z in xs if params.admissible_gap(abs(z.level - x.level))]


@lru_cache(maxsize=4096)
def _s_of_cached(level_x: int, params: TesterParams) -> int:
    return sum(1 for i in params.levels if params.admissible_gap(abs(i - level_x)))


def s_of(level_x: int, params: TesterParams) -> int:
    """s(x) = |Y_p(x)|, which depends on |x| only"""
    if not params.in_middle(level_x):
        raise ValueError(f"level {level_x} lies outside I_ell = [{params.i_lo}, {params.i_hi}]")
    return _s_of_cached(level_x, params)


def count_paths_through_pair(t: int, u: int, n: int) -> int:
    """Number of 0^n -> 1^n paths through a fixed pair x ≺ y with |x| = t, ||y - x|| = u"""
    if t < 0 or u < 1 or t + u > n:
        raise ValueError(f"invalid levels t={t}, u={u} for n={n}")
    return math.factorial(t) * math.factorial(u) * math.factorial(n - u - t)


def count_paths_through_point(t: int, n: int) -> int:
    """Number of paths through a fixed vertex at level t"""
    if not 0 <= t <= n:
        raise ValueError(f"invalid level t={t} for n={n}")
    return math.factorial(t) * math.factorial(n - t)


def _path_fraction(t: int, u: int, n: int) -> Probability:
    """|P_{x,y}| / |P| = 1 / (C(n,t) C(n-t,u)) for a pair at levels t, t+u (u may be 0)"""
    if n <= EXACT_DIMENSION_LIMIT:
        return Fraction(1, math.comb(n, t) * math.comb(n - t, u))
    log_count = math.lgamma(t + 1) + math.lgamma(u + 1) + math.lgamma(n - t - u + 1)
    return math.exp(log_count - math.lgamma(n + 1))


def _unit(numerator: int, denominator: int, n: int) -> Probability:
    if n <= EXACT_DIMENSION_LIMIT:
        return Fraction(numerator, denominator)
    return numerator / denominator


def _theta(t: int, t2: int, params: TesterParams) -> Probability:
    """Conditional probability of picking the outcome {x, y} given a path through both"""
    first = _unit(1, params.middle_size, params.n)
    if t == t2:
        return first * _unit(1, s_of(t, params), params.n)
    return first * (_unit(1, s_of(t, params), params.n) + _unit(1, s_of(t2, params), params.n))


@lru_cache(maxsize=4096)
def level_pair_prob(t: int, t2: int, params: TesterParams) -> Probability:
    """Probability that one draw yields a fixed unordered outcome with levels t <= t2

    The probability only depends on the two levels: for a comparable pair
    theta_{x,y} * |P_{x,y}| / |P|, and for the self outcome x = y (possible
    only when tau <= 0) the same with a single ordering.
    """
    if t > t2:
        t, t2 = t2, t
    zero = Fraction(0) if params.n <= EXACT_DIMENSION_LIMIT else 0.0
    if not (params.in_middle(t) and params.in_middle(t2)):
        return zero
    if not params.admissible_gap(t2 - t):
        return zero
    return _theta(t, t2, params) * _path_fraction(t, t2 - t, params.n)


@dataclass(frozen=True)
class PairProbability:
    """Exact probability of one unordered path tester outcome"""
    x: Point
    y: Point
    prob: Probability
    theta: Probability
    path_count: int


def pair_prob(x: Point, y: Point, params: TesterParams) -> PairProbability:
    """Probability that one path tester draw samples the unordered outcome {x, y}"""
    if x.n != params.n or y.n != params.n:
        raise ValueError(f"points of dimension {x.n}/{y.n} do not match params dimension {params.n}")
    zero = Fraction(0) if params.n <= EXACT_DIMENSION_LIMIT else 0.0
    lo, hi = (x, y) if precedes(x.bits, y.bits) else (y, x)
    if not precedes(lo.bits, hi.bits):
        # Incomparable points never share a path
        return PairProbability(x, y, zero, zero, 0)

    t, t2 = lo.level, hi.level
    if t == t2:
        path_count = count_paths_through_point(t, params.n)
    else:
        path_count = count_paths_through_pair(t, t2 - t, params.n)
    if not (params.in_middle(t) and params.in_middle(t2)) or not params.admissible_gap(t2 - t):
        return PairProbability(x, y, zero, zero, path_count)
    return PairProbability(x, y, level_pair_prob(t, t2, params), _theta(t, t2, params), path_count)


def outcome_count(t: int, t2: int, n: int) -> int:
    """Number of unordered outcomes {x, y} with x ≼ y at levels t <= t2"""
    return math.comb(n, t) * math.comb(n - t, t2 - t)


def total_outcome_mass(params: TesterParams) -> Probability:
    """Sum of level_pair_prob over every outcome of one draw; equals 1"""
    total = Fraction(0) if params.n <= EXACT_DIMENSION_LIMIT else 0.0
    for t in params.levels:
        for t2 in range(t, params.i_hi + 1):
            total += outcome_count(t, t2, params.n) * level_pair_prob(t, t2, params)
    return total


def draw_levels(params: TesterParams, rng: np.random.Generator) -> Tuple[int, int]:
    """Sample the (first, second) levels of one draw given any path"""
    first = params.i_lo + int(rng.integers(params.middle_size))
    admissible = [i for i in params.levels if params.admissible_gap(abs(i - first))]
    if not admissible:
        raise ValueError(f"Y_p(x) is empty at level {first} (tau={params.tau})")
    second = admissible[int(rng.integers(len(admissible)))]
    return first, second


def outer_layer_mass(params: TesterParams) -> Tuple[int, Fraction, bool]:
    """Points outside the middle layers against the eps^5 2^n bound"""
    outside = sum(math.comb(params.n, i) for i in range(params.n + 1) if not params.in_middle(i))
    bound = Fraction(params.eps) ** 5 * 2 ** params.n
    return outside, bound, outside <= bound


def theta_ratio_check(params: TesterParams) -> bool:
    """theta_{x,y'} >= theta_{x,y} / 2 and s(y) <= s(y') <= s(y) + 1 for |y'| = |y| + 1

    Checked over all admissible level triples t < t2 < t2 + 1 inside I_ell.
    """
    for level in range(params.i_lo, params.i_hi):
        s_y, s_next = s_of(level, params), s_of(level + 1, params)
        if not (s_y <= s_next <= s_y + 1 or s_next <= s_y <= s_next + 1):
            return False
    for t in params.levels:
        for t2 in range(t + 1, params.i_hi):
            if not params.admissible_gap(t2 - t):
                continue
            if 2 * _theta(t, t2 + 1, params) < _theta(t, t2, params):
                return False
    return True


def random_point(n: int, rng: np.random.Generator) -> int:
    """Uniform point of {0,1}^n as a mask"""
    if n <= 62:
        return int(rng.integers(0, 1 << n))
    bits = rng.integers(0, 2, size=n)
    return sum(1 << i for i in range(n) if bits[i])
