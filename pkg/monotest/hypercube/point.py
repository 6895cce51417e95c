"""
Points of the directed hypercube {0,1}^n
Coordinate i of a point is bit i of an unsigned integer mask
"""
from dataclasses import dataclass
from typing import Iterator

# Truth tables are materialized only up to this dimension
MAX_TABLE_DIMENSION = 30
# Rule-based oracles and parameter derivation accept larger dimensions
MAX_DIMENSION = 4096


def popcount(mask: int) -> int:
    """Number of ones in a mask"""
    return bin(mask).count("1")


def precedes(x: int, y: int) -> bool:
    """x ≺ y in the coordinatewise order (x == y allowed)"""
    return x & ~y == 0


def comparable(x: int, y: int) -> bool:
    """True if x ≼ y or y ≼ x"""
    return precedes(x, y) or precedes(y, x)


def distance(x: int, y: int) -> int:
    """Hamming (l1) distance between two masks"""
    return popcount(x ^ y)


def submasks(mask: int) -> Iterator[int]:
    """All submasks of mask, mask itself first and 0 last"""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def check_dimension(n: int, limit: int = MAX_DIMENSION):
    """Raise ValueError unless 1 <= n <= limit"""
    if not isinstance(n, int) or n < 1 or n > limit:
        raise ValueError(f"dimension out of range: n={n} (expected 1..{limit})")


@dataclass(frozen=True, order=True)
class Point:
    """A vertex of {0,1}^n; bit i of `bits` is coordinate x_i"""
    bits: int
    n: int

    def __post_init__(self):
        check_dimension(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"point {self.bits:#x} does not fit in dimension {self.n}")

    @property
    def level(self) -> int:
        return popcount(self.bits)

    def coordinate(self, i: int) -> int:
        return (self.bits >> i) & 1

    def flip(self, i: int) -> 'Point':
        return Point(self.bits ^ (1 << i), self.n)

    def precedes(self, other: 'Point') -> bool:
        return self.n == other.n and precedes(self.bits, other.bits)

    def comparable(self, other: 'Point') -> bool:
        return self.n == other.n and comparable(self.bits, other.bits)

    def distance(self, other: 'Point') -> int:
        return distance(self.bits, other.bits)

    def to_string(self) -> str:
        """Coordinates x_0 x_1 ... x_{n-1} left to right"""
        return "".join(str(self.coordinate(i)) for i in range(self.n))

    @classmethod
    def from_string(cls, text: str) -> 'Point':
        """Inverse of to_string"""
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"not a bit string: {text!r}")
        bits = 0
        for i, c in enumerate(text):
            if c == "1":
                bits |= 1 << i
        return cls(bits, len(text))

    def __str__(self) -> str:
        return self.to_string()
