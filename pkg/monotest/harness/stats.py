"""
Statistics helpers for the harness
"""
import hashlib
import math
from typing import Sequence, Tuple

from scipy import stats


def derive_seed(master_seed: int, index: int) -> int:
    """Per-trial seed: first 8 bytes of blake2b over (master, index); fixed for reproducibility"""
    if master_seed < 0 or index < 0:
        raise ValueError(f"seeds must be non-negative, got master={master_seed} index={index}")
    payload = master_seed.to_bytes(16, "little") + index.to_bytes(16, "little")
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion"""
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if not 0 <= successes <= trials:
        raise ValueError(f"successes={successes} outside [0, {trials}]")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must lie in (0, 1), got {confidence}")
    z = stats.norm.ppf(1.0 - (1.0 - confidence) / 2.0)
    p = successes / trials
    denominator = 1.0 + z * z / trials
    centre = (p + z * z / (2.0 * trials)) / denominator
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials)) / denominator
    return max(0.0, centre - half), min(1.0, centre + half)


def standard_error(p: float, trials: int) -> float:
    """Binomial standard error sqrt(p (1 - p) / trials)"""
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    return math.sqrt(max(p * (1.0 - p), 0.0) / trials)


def within_standard_errors(observed: int, trials: int, p: float, tolerance: float) -> bool:
    """|observed/trials - p| <= tolerance standard errors; an exact match is required when p is 0 or 1"""
    se = standard_error(float(p), trials)
    deviation = abs(observed / trials - float(p))
    if se == 0.0:
        return deviation == 0.0
    return deviation <= tolerance * se


def chi_square_uniform(counts: Sequence[int]) -> Tuple[float, float]:
    """Chi-square goodness of fit of `counts` against the uniform distribution: (statistic, p-value)"""
    if len(counts) < 2:
        raise ValueError("chi-square test needs at least two categories")
    result = stats.chisquare(list(counts))
    return float(result.statistic), float(result.pvalue)
