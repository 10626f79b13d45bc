"""Deterministic counter-based RNG.

A splitmix64 stream is used everywhere randomness is needed so that the
pure-Python and compiled exploration engines produce bit-identical
results, and so that per-trial streams can be derived from a root seed
independently of scheduling order.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(root: int, index: int) -> int:
    """Derive an independent stream seed from a root seed and an index.

    Counter-based: the result depends only on (root, index), never on how
    many other streams were derived before, so parallel trials are
    reproducible regardless of worker scheduling.
    """
    return _mix((root * 0x632BE59BD9B4E019 + index * _GAMMA + 1) & _MASK64)


class SplitMix64:
    """Minimal splitmix64 generator with a bias-negligible bounded draw."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        return _mix(self.state)

    def below(self, n: int) -> int:
        """Uniform draw from [0, n) via the multiply-high reduction."""
        if n <= 0:
            raise ValueError("bound must be positive")
        return (self.next_u64() * n) >> 64
