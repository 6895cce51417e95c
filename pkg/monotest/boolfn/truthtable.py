"""
Truth tables for Boolean functions on {0,1}^n
Handles bit packing, edge scans and the BFTT file format
"""
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from ..hypercube.point import MAX_TABLE_DIMENSION, check_dimension
from ..util.logging import debug, info

# BFTT header: magic, version byte, dimension byte
BFTT_MAGIC = b"BFTT"
BFTT_VERSION = 1
BFTT_HEADER_SIZE = 6


def packed_size(n: int) -> int:
    """Bytes needed for 2^n bits"""
    return ((1 << n) + 7) // 8


@dataclass(frozen=True)
class TruthTable:
    """A complete Boolean function, bit x of `packed` (little-endian within bytes) is f(x)"""
    n: int
    packed: bytes

    def __post_init__(self):
        check_dimension(self.n, MAX_TABLE_DIMENSION)
        if len(self.packed) != packed_size(self.n):
            raise ValueError(f"truth table for n={self.n} needs {packed_size(self.n)} bytes, "
                             f"got {len(self.packed)}")
        size = 1 << self.n
        if size < 8 and self.packed[0] >> size:
            raise ValueError("bits beyond index 2^n - 1 must be zero")

    @classmethod
    def from_values(cls, values, n: int) -> 'TruthTable':
        """Build from a length-2^n sequence of 0/1 values indexed by point mask"""
        array = np.asarray(values, dtype=np.uint8)
        if array.shape != (1 << n,):
            raise ValueError(f"expected {1 << n} values for n={n}, got shape {array.shape}")
        if np.any(array > 1):
            raise ValueError("truth table values must be 0 or 1")
        return cls(n, np.packbits(array, bitorder="little").tobytes())

    @classmethod
    def from_int(cls, code: int, n: int) -> 'TruthTable':
        """Build from an integer whose bit x is f(x) (enumeration order for small n)"""
        size = 1 << n
        if code < 0 or code >> size:
            raise ValueError(f"code {code} does not describe a function on {n} variables")
        return cls(n, code.to_bytes(packed_size(n), "little"))

    def to_int(self) -> int:
        return int.from_bytes(self.packed, "little")

    @cached_property
    def values(self) -> np.ndarray:
        """Unpacked uint8 array of length 2^n"""
        bits = np.unpackbits(np.frombuffer(self.packed, dtype=np.uint8), bitorder="little")
        return bits[:1 << self.n]

    @property
    def size(self) -> int:
        return 1 << self.n

    def __call__(self, x: int) -> int:
        return (self.packed[x >> 3] >> (x & 7)) & 1

    def ones(self) -> np.ndarray:
        """Masks with f = 1, ascending"""
        return np.flatnonzero(self.values)

    def zeros(self) -> np.ndarray:
        """Masks with f = 0, ascending"""
        return np.flatnonzero(self.values == 0)

    def dimension_view(self, i: int) -> Tuple[np.ndarray, np.ndarray]:
        """(lower, upper) endpoint values of all dimension-i edges, aligned elementwise"""
        cube = self.values.reshape(1 << (self.n - 1 - i), 2, 1 << i)
        return cube[:, 0, :].ravel(), cube[:, 1, :].ravel()

    def violated_edge_counts(self) -> np.ndarray:
        """Per-dimension number of directed edges (x, x + e_i) with f(x) = 1, f(x + e_i) = 0"""
        counts = np.zeros(self.n, dtype=np.int64)
        for i in range(self.n):
            lower, upper = self.dimension_view(i)
            counts[i] = int(np.count_nonzero(lower > upper))
        return counts

    def bichromatic_edge_counts(self) -> np.ndarray:
        """Per-dimension number of edges whose endpoints disagree"""
        counts = np.zeros(self.n, dtype=np.int64)
        for i in range(self.n):
            lower, upper = self.dimension_view(i)
            counts[i] = int(np.count_nonzero(lower != upper))
        return counts


def is_monotone_exact(f: TruthTable) -> bool:
    """True iff no directed edge (x, x + e_i) has f(x) = 1 and f(x + e_i) = 0"""
    for i in range(f.n):
        lower, upper = f.dimension_view(i)
        if np.any(lower > upper):
            return False
    return True


def encode_table(f: TruthTable) -> bytes:
    """Serialize to the BFTT byte layout"""
    return BFTT_MAGIC + bytes([BFTT_VERSION, f.n]) + f.packed


def decode_table(data: bytes) -> TruthTable:
    """Parse BFTT bytes; rejects wrong magic, version or payload length"""
    if len(data) < BFTT_HEADER_SIZE or data[:4] != BFTT_MAGIC:
        raise ValueError("not a BFTT truth table: wrong magic")
    version, n = data[4], data[5]
    if version != BFTT_VERSION:
        raise ValueError(f"unsupported BFTT version {version}")
    check_dimension(n, MAX_TABLE_DIMENSION)
    payload = data[BFTT_HEADER_SIZE:]
    if len(payload) != packed_size(n):
        raise ValueError(f"BFTT payload for n={n} must be {packed_size(n)} bytes, got {len(payload)}")
    return TruthTable(n, bytes(payload))


def write_table(f: TruthTable, path: str):
    """Write a truth table file"""
    with open(path, "wb") as fh:
        fh.write(encode_table(f))
    info(f"Wrote truth table n={f.n} to {path}")


def read_table(path: str) -> TruthTable:
    """Read a truth table file"""
    debug(f"Attempting to load truth table from: {path}")
    if not os.path.exists(path):
        raise FileNotFoundError(f"truth table file not found: {path}")
    with open(path, "rb") as fh:
        table = decode_table(fh.read())
    info(f"Loaded truth table: {os.path.basename(path)} (n={table.n})")
    return table
