"""
Path tester parameters for monotest
Derives C_eps, the walk scale ell, the middle-layer window I_ell and the
distance threshold tau from (n, eps, sigma)
"""
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Tuple

from .point import check_dimension


@dataclass(frozen=True)
class TesterParams:
    """Constants governing one path tester configuration"""
    n: int
    eps: float
    sigma: float
    c_eps: float
    ell: int
    i_lo: int
    i_hi: int
    tau: float

    @property
    def middle_size(self) -> int:
        """|X_p|: number of middle layers a path visits"""
        return self.i_hi - self.i_lo + 1

    @property
    def mu(self) -> float:
        """sigma / (16 C_eps), the slack in |X_p| - |Y_p(x)| <= mu * ell"""
        return self.sigma / (16.0 * self.c_eps)

    @property
    def levels(self) -> range:
        return range(self.i_lo, self.i_hi + 1)

    @property
    def clipped(self) -> bool:
        """True when the unclipped window [n/2 - ell/2, n/2 + ell/2] leaves [0, n]"""
        return self.ell >= self.n

    def in_middle(self, level: int) -> bool:
        return self.i_lo <= level <= self.i_hi

    def admissible_gap(self, gap: int) -> bool:
        """Level distance accepted by Y_p(x)"""
        return gap >= self.tau

    def with_window(self, i_lo: int, i_hi: int) -> 'TesterParams':
        """Copy with an explicit middle-layer window (narrow windows for experiments)"""
        if not 0 <= i_lo <= i_hi <= self.n:
            raise ValueError(f"invalid layer window [{i_lo}, {i_hi}] for n={self.n}")
        return replace(self, i_lo=i_lo, i_hi=i_hi)

    def with_tau(self, tau: float) -> 'TesterParams':
        """Copy with an explicit distance threshold"""
        return replace(self, tau=float(tau))

    def to_dict(self) -> dict:
        return {
            "n": self.n, "eps": self.eps, "sigma": self.sigma, "c_eps": self.c_eps,
            "ell": self.ell, "i_lo": self.i_lo, "i_hi": self.i_hi, "tau": self.tau,
        }


def c_epsilon(eps: float) -> float:
    """C_eps = sqrt(10 ln(1/eps))"""
    return math.sqrt(10.0 * math.log(1.0 / eps))


def middle_window(n: int, ell: int) -> Tuple[int, int]:
    """Integer layers inside [n/2 - ell/2, n/2 + ell/2], clipped to [0, n]"""
    i_lo = max(0, -((ell - n) // 2))
    i_hi = min(n, (n + ell) // 2)
    return i_lo, i_hi


def check_eps(eps) -> float:
    eps = float(eps)
    if not 0.0 < eps <= 0.5:
        raise ValueError(f"eps must lie in (0, 1/2], got {eps}")
    return eps


def check_sigma(sigma) -> float:
    sigma = float(sigma)
    if not 0.0 < sigma <= 1.0:
        raise ValueError(f"sigma must lie in (0, 1], got {sigma}")
    return sigma


def make_params(n: int, eps, sigma) -> TesterParams:
    """Build the path tester constants; tau may come out negative and is kept as is"""
    check_dimension(n)
    eps = check_eps(eps)
    sigma = check_sigma(sigma)

    c_eps = c_epsilon(eps)
    ell = 2 * math.ceil(c_eps * math.sqrt(n))
    i_lo, i_hi = middle_window(n, ell)
    tau = sigma * ell / (32.0 * c_eps) - 1.0
    return TesterParams(n=n, eps=eps, sigma=sigma, c_eps=c_eps, ell=ell,
                        i_lo=i_lo, i_hi=i_hi, tau=tau)


def params_for_distance(n: int, eps_f, sigma=0.5) -> TesterParams:
    """Parameters used by the exact metrics for a function at distance eps_f

    A monotone function has no violated edges at all, so the window it gets
    is irrelevant; eps = 1/2 is used for it.
    """
    eps = Fraction(eps_f) if eps_f else Fraction(1, 2)
    return make_params(n, float(eps), sigma)
