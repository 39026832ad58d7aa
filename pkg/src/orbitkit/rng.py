"""Deterministic seeded random stream (splitmix64).

The generator is spelled out in full so fixtures are reproducible from a
seed alone, independently of numpy's RNG internals or of the language a
fixture consumer is written in:

  state  <- (state + 0x9E3779B97F4A7C15) mod 2^64
  z      <- state
  z      <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
  z      <- (z xor (z >> 27)) * 0x94D049BB133111EB mod 2^64
  output <- z xor (z >> 31)

Uniform doubles take the top 53 bits (``u64 >> 11`` times 2^-53); normals
come from the Box-Muller transform on consecutive uniforms; derived
streams hash (seed, salt) through the same mixer.
"""

from __future__ import annotations

import math

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(seed: int, salt: int) -> int:
    """Deterministic child seed for instance ``salt`` of a suite."""
    return _mix((seed & _MASK) ^ _mix((salt + 1) * _GAMMA & _MASK))


class SplitMix64:
    """64-bit splitmix stream with uniform / normal / complex draws."""

    def __init__(self, seed: int):
        self._state = seed & _MASK
        self._spare_normal: float | None = None

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return _mix(self._state)

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def uniform_in(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in {lo, ..., hi} (inclusive)."""
        span = hi - lo + 1
        return lo + int(self.next_u64() % span)

    def normal(self) -> float:
        """Standard normal via Box-Muller."""
        if self._spare_normal is not None:
            value, self._spare_normal = self._spare_normal, None
            return value
        u1 = self.uniform()
        while u1 == 0.0:
            u1 = self.uniform()
        u2 = self.uniform()
        radius = math.sqrt(-2.0 * math.log(u1))
        self._spare_normal = radius * math.sin(2.0 * math.pi * u2)
        return radius * math.cos(2.0 * math.pi * u2)

    def complex_normal(self) -> complex:
        return complex(self.normal(), self.normal())

    def complex_matrix(self, rows: int, cols: int) -> np.ndarray:
        out = np.empty((rows, cols), dtype=np.complex128)
        for i in range(rows):
            for j in range(cols):
                out[i, j] = self.complex_normal()
        return out

    def shuffle(self, items: list) -> None:
        """Fisher-Yates in place."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]

    def spawn(self, salt: int) -> "SplitMix64":
        return SplitMix64(derive_seed(self._state, salt))
