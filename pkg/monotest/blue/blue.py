"""
Blue-blue probabilities of the path tester
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Iterable, Optional

import numpy as np

from ..hypercube.params import TesterParams
from ..hypercube.paths import level_pair_prob, s_of, sample_path
from ..hypercube.point import check_dimension, popcount, submasks
from ..testers.tester import PathTester
from ..util.logging import debug, warning

MAX_BLUE_DIMENSION = 12
MAX_FRACTION_DIMENSION = 20


@dataclass(frozen=True)
class BlueInstance:
    params: TesterParams
    blue: FrozenSet[int] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "blue", frozenset(int(v) for v in self.blue))
        for v in self.blue:
            if v < 0 or v >> self.n:
                raise ValueError(f"blue point {v} lies outside {{0,1}}^{self.n}")
            if not self.params.in_middle(popcount(v)):
                raise ValueError(f"blue point {v} at level {popcount(v)} is outside the middle layers")

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def sigma_actual(self) -> Fraction:
        return Fraction(len(self.blue), 1 << self.n)

    def layer_counts(self) -> dict:
        counts = {i: 0 for i in self.params.levels}
        for v in self.blue:
            counts[popcount(v)] += 1
        return counts


def middle_layer_points(params: TesterParams) -> np.ndarray:
    check_dimension(params.n, MAX_FRACTION_DIMENSION)
    points = np.arange(1 << params.n, dtype=np.int64)
    levels = sum((points >> i) & 1 for i in range(params.n))
    return points[(levels >= params.i_lo) & (levels <= params.i_hi)]


def random_blue_instance(params: TesterParams, sigma: float, rng: np.random.Generator) -> BlueInstance:
    """ceil(sigma 2^n) middle-layer points chosen uniformly without replacement"""
    middle = middle_layer_points(params)
    k = math.ceil(Fraction(sigma) * (1 << params.n))
    if k > len(middle):
        raise ValueError(f"sigma={sigma} needs {k} blue points but the middle layers hold {len(middle)}")
    chosen = rng.choice(middle, size=k, replace=False)
    return BlueInstance(params, frozenset(int(v) for v in chosen))


def layer_blue_instance(params: TesterParams, levels: Iterable[int]) -> BlueInstance:
    """All points of the given layers"""
    levels = set(levels)
    middle = middle_layer_points(params)
    return BlueInstance(params, frozenset(int(v) for v in middle if popcount(int(v)) in levels))


def exact_blue_prob(instance: BlueInstance) -> Fraction:
    """Pr[both points of one path tester draw are blue], summed over blue outcomes x ≼ y"""
    check_dimension(instance.n, MAX_BLUE_DIMENSION)
    params = instance.params
    total = Fraction(0)
    for y in instance.blue:
        t2 = popcount(y)
        for x in submasks(y):
            if x in instance.blue:
                total += level_pair_prob(popcount(x), t2, params)
    return total


def expected_blue_fraction(instance: BlueInstance) -> Fraction:
    """E[b(p) / |X_p|] = sum over middle layers of n_i / C(n, i), divided by |X_p|"""
    check_dimension(instance.n, MAX_FRACTION_DIMENSION)
    n = instance.n
    total = sum(Fraction(count, math.comb(n, i)) for i, count in instance.layer_counts().items())
    return total / instance.params.middle_size


def sample_blue_prob(instance: BlueInstance, draws: int, rng: np.random.Generator) -> int:
    """Number of draws (out of `draws`) whose two points are both blue"""
    tester = PathTester(instance.params)
    hits = 0
    for _ in range(draws):
        lower, upper = tester.draw(rng)
        if lower in instance.blue and upper in instance.blue:
            hits += 1
    return hits


def sample_blue_fraction(instance: BlueInstance, paths: int, rng: np.random.Generator) -> float:
    """Mean of b(p) / |X_p| over sampled paths"""
    params = instance.params
    total = 0
    for _ in range(paths):
        path = sample_path(instance.n, rng)
        total += sum(1 for level in params.levels if path.vertex(level) in instance.blue)
    return total / (paths * params.middle_size)


@dataclass
class BlueChainReport:
    n: int
    eps: float
    sigma: float
    blue_count: int
    prob: Fraction
    expected: Fraction
    mu_eff: Fraction
    mu_literal: Fraction
    chain_bound: Fraction
    chain_pass: bool
    literal_pass: bool
    fraction_bound: Optional[Fraction]
    fraction_pass: Optional[bool]

    @property
    def passed(self) -> bool:
        return self.chain_pass and self.fraction_pass is not False

    def to_row(self) -> dict:
        def text(value):
            return None if value is None else f"{value.numerator}/{value.denominator}"
        return {
            "n": self.n, "eps": self.eps, "sigma": self.sigma, "blue": self.blue_count,
            "prob": text(self.prob), "prob_float": float(self.prob),
            "expected": text(self.expected), "chain_bound": text(self.chain_bound),
            "chain_pass": self.chain_pass, "literal_mu_pass": self.literal_pass,
            "fraction_bound": text(self.fraction_bound), "fraction_pass": self.fraction_pass,
        }


def effective_mu(params: TesterParams) -> Fraction:
    """Largest share of X_p excluded from some Y_p(x): max over levels of (|X_p| - s) / |X_p|"""
    size = params.middle_size
    return max(Fraction(size - s_of(level, params), size) for level in params.levels)


def fraction_bound_applies(params: TesterParams) -> bool:
    """Every middle layer satisfies |L_i| <= 2^n / sqrt(n)"""
    n = params.n
    return all(math.comb(n, i) ** 2 * n <= 4 ** n for i in params.levels)


def check_blue_chain(instance: BlueInstance) -> BlueChainReport:
    """Pr[E] >= E (E - mu) and, where the layer sizes allow it, E >= sigma sqrt(n) / ell"""
    params = instance.params
    if instance.sigma_actual < Fraction(params.sigma):
        raise ValueError(f"blue density {float(instance.sigma_actual):.6f} is below sigma={params.sigma}")
    prob = exact_blue_prob(instance)
    expected = expected_blue_fraction(instance)
    mu_eff = effective_mu(params)
    mu_literal = Fraction(params.mu)
    chain_bound = expected * (expected - mu_eff)

    fraction_bound = None
    fraction_pass = None
    if fraction_bound_applies(params):
        # E^2 >= sigma^2 n / scale^2, squared to stay rational
        scale = max(params.ell, params.middle_size)
        fraction_bound = instance.sigma_actual ** 2 * params.n / scale ** 2
        fraction_pass = expected ** 2 >= fraction_bound

    report = BlueChainReport(
        n=instance.n, eps=params.eps, sigma=params.sigma, blue_count=len(instance.blue),
        prob=prob, expected=expected, mu_eff=mu_eff, mu_literal=mu_literal,
        chain_bound=chain_bound, chain_pass=prob >= chain_bound,
        literal_pass=prob >= expected * (expected - mu_literal),
        fraction_bound=fraction_bound, fraction_pass=fraction_pass,
    )
    if report.passed:
        debug(f"blue chain n={instance.n} |blue|={len(instance.blue)}: Pr[E]={float(prob):.6f}")
    else:
        warning(f"blue chain failed: {report.to_row()}")
    return report
