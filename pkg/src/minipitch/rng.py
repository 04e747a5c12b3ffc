"""Seedable counter-based random number generator.

A splitmix-style generator: the state is a single 64-bit counter, each draw
advances it by a fixed odd constant and hashes the counter through a bijective
mixer.  Copying the state is copying one integer, and independent streams are
derived by hashing (seed, stream) together, which is what per-episode seeding
uses.  Not cryptographic; chosen for exact reproducibility and cheap snapshots.
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def stream_seed(seed: int, stream: int) -> int:
    """Derive the seed for an independent stream (e.g. episode index)."""
    return _mix((seed & _MASK) + (stream & _MASK) * _GAMMA)


class DeterministicRng:
    """64-bit counter generator; same seed and draw order give same outputs."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def clone(self) -> "DeterministicRng":
        c = DeterministicRng(0)
        c.state = self.state
        return c

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        return _mix(self.state)

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def normal(self) -> float:
        """Standard normal via Box-Muller; two uniforms per draw, no cache."""
        u1 = self.uniform()
        u2 = self.uniform()
        while u1 <= 0.0:  # log(0) guard; probability 2^-53
            u1 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def split(self, key: int) -> "DeterministicRng":
        """Independent generator derived from the current state and a key."""
        return DeterministicRng(_mix(self.state ^ stream_seed(key, 1)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DeterministicRng) and self.state == other.state

    def __repr__(self) -> str:
        return f"DeterministicRng(0x{self.state:016x})"
