"""Deterministic pseudorandom streams for orientation sampling.

The generator is SplitMix64: the state advances by the additive constant
0x9E3779B97F4A7C15 and each output is the standard two-multiply finalizer
of the new state.  These constants are part of the public contract; every
orientation, CSV file, and figure produced by this package is reproducible
bit-for-bit from a 64-bit master seed in any language that implements the
same generator.

Stream derivation: a per-task stream seed is obtained by folding a short
word sequence (master seed, grid indices, sample index, ...) through the
same finalizer, see :func:`mix_words`.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MULT1 = 0xBF58476D1CE4E5B9
_MULT2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer: xor-shift, multiply, xor-shift, multiply, xor-shift."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MULT1) & MASK64
    z = ((z ^ (z >> 27)) * _MULT2) & MASK64
    return (z ^ (z >> 31)) & MASK64


def mix_words(*words: int) -> int:
    """Fold a word sequence into a single 64-bit stream seed.

    acc starts at 0; for each word w (reduced mod 2^64) the update is
    acc = mix64(acc + GOLDEN_GAMMA + w).  The golden-gamma offset keeps the
    all-zero sequence away from the finalizer's 0 -> 0 fixed point.
    """
    acc = 0
    for w in words:
        acc = mix64((acc + GOLDEN_GAMMA + (int(w) & MASK64)) & MASK64)
    return acc


class SplitMix64:
    """Sequential form of the generator (reference implementation)."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def next_unit(self) -> float:
        """Float in [0, 1): top 53 bits of the next output."""
        return (self.next_u64() >> 11) * 2.0**-53


def stream_u64(seed: int, count: int) -> np.ndarray:
    """Outputs 1..count of SplitMix64(seed), vectorized.

    The state after i steps is seed + i*GOLDEN_GAMMA (mod 2^64), so the whole
    stream finalizes in a few array operations; bit-exact vs. the sequential
    class above.
    """
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(int(seed) & MASK64) + idx * np.uint64(GOLDEN_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MULT1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MULT2)
    return z ^ (z >> np.uint64(31))


def stream_units(seed: int, count: int) -> np.ndarray:
    """count floats in [0, 1): (u64 >> 11) * 2^-53 for each stream output."""
    return (stream_u64(seed, count) >> np.uint64(11)).astype(np.float64) * 2.0**-53
