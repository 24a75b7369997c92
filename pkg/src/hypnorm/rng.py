"""Deterministic pseudorandom numbers.

All randomness in the package flows through :class:`Xorshift64Star`, a
64-bit shift-register generator (Marsaglia's xorshift64 with the standard
odd multiplier on output).  No global state, no dependence on NumPy's RNG:
the same seed produces the same stream on every platform and version.

Recurrence (64-bit, wrapping):

    x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27
    output = x * 0x2545F4914F6CDD1D
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_MULT = 0x2545F4914F6CDD1D
_PHI64 = 0x9E3779B97F4A7C15  # used to displace the zero seed and derive sub-seeds


class Xorshift64Star:
    """xorshift64* stream; seed 0 is remapped to a fixed nonzero constant."""

    __slots__ = ("state", "_spare")

    def __init__(self, seed: int):
        self.state = (int(seed) & _MASK) or _PHI64
        self._spare = None

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self.state = x
        return (x * _MULT) & _MASK

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def normal(self) -> float:
        """Standard normal via Box-Muller (pairs cached)."""
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(1.0 - u1))
        self._spare = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def complex_normal(self) -> complex:
        """Complex Gaussian with independent N(0,1) real and imaginary parts."""
        return complex(self.normal(), self.normal())


def derive_seed(base: int, index: int) -> int:
    """Deterministic sub-seed for trial `index` of a campaign seeded with `base`.

    One xorshift64* step applied to base mixed with the golden-ratio multiple
    of (index+1); collision-free enough at desk scale and reproducible.
    """
    rng = Xorshift64Star((int(base) + (int(index) + 1) * _PHI64) & _MASK)
    return rng.next_u64()
