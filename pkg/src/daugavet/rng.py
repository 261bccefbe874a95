"""Seeded SplitMix64 stream used by every random generator in the package.

The stream is fully specified so other implementations can reproduce it:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output z ^ (z >> 31)

Derived draws:

* ``uniform()``   = ``(next() >> 11) * 2**-53``, in [0, 1)
* ``below(m)``    = ``next() mod m`` (bias below 2**-40 for m <= 2**24)
* ``integer(lo, hi)`` = ``lo + below(hi - lo + 1)``
"""
from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next() >> 11) * 2.0**-53

    def below(self, m: int) -> int:
        if m < 1:
            raise ValueError("below() needs m >= 1")
        return self.next() % m

    def integer(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)


def derive_seed(seed: int, index: int) -> int:
    """Seed for the ``index``-th independent sub-stream of ``seed``."""
    g = SplitMix64(seed ^ ((index * 0xD1B54A32D192ED03) & _MASK))
    return g.next()
