"""Counter-based deterministic sampling of the fundamental square.

Sample i of a run is a pure function of (seed, i): the two coordinates
are read from a SHAKE-256 stream keyed on both values, so any sample can
be generated without generating the ones before it and parallel workers
cannot disagree with a serial run.
"""

from __future__ import annotations

import hashlib

from .gaussian import GaussInt, GaussRational

__all__ = ["SampleSpec", "sample_ints", "sample_dyadic"]


class SampleSpec:
    """Configuration for one Monte Carlo population.

    bits is the dyadic precision (denominator 2^bits); depth the digit
    budget per sample.  depth <= bits/2 keeps early exhaustion rare, and
    exhaustion is counted rather than hidden when it does happen.
    """

    __slots__ = ("seed", "count", "bits", "depth")

    def __init__(self, seed: int, count: int, bits: int, depth: int):
        if bits < 16:
            raise ValueError("bits must be >= 16")
        if count < 1 or depth < 1:
            raise ValueError("count and depth must be positive")
        if depth > bits // 2:
            raise ValueError(f"depth {depth} exceeds bits/2 = {bits // 2}")
        self.seed = int(seed)
        self.count = int(count)
        self.bits = int(bits)
        self.depth = int(depth)

    def to_json(self):
        return {"seed": self.seed, "count": self.count,
                "bits": self.bits, "depth": self.depth}


def sample_ints(seed: int, index: int, bits: int):
    """(j, k) with both uniform on [-2^(bits-1), 2^(bits-1))."""
    key = seed.to_bytes(8, "big", signed=True) + index.to_bytes(8, "big")
    stream = hashlib.shake_256(key).digest((2 * bits + 7) // 8)
    value = int.from_bytes(stream, "big")
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    j = (value & mask) - half
    k = ((value >> bits) & mask) - half
    return j, k


def sample_dyadic(spec: SampleSpec, index: int) -> GaussRational:
    """Sample index as an exact Gaussian rational in F."""
    j, k = sample_ints(spec.seed, index, spec.bits)
    return GaussRational(GaussInt(j, k), 1 << spec.bits)
