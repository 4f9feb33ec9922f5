"""Deterministic random streams.

All procedural generation and in-game randomness flows through ``Rng``, a pure
Python xoshiro256** generator seeded via splitmix64.  The stdlib Mersenne
Twister would work on any one machine, but pinning the exact algorithm here
keeps byte-identical streams across interpreter versions and platforms, which
the determinism guarantees depend on.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


def text_salt(text: str) -> int:
    """Stable 64-bit hash of a string (FNV-1a), for salting derived seeds."""
    h = 0xCBF29CE484222325
    for b in text.encode("utf-8"):
        h ^= b
        h = (h * 0x100000001B3) & _MASK
    return h


def derive_seed(seed: int, salt: int) -> int:
    """Derive an independent child seed from (seed, salt).

    Used to split one user-facing seed into compile / episode / retry streams
    without correlating them.
    """
    state = (seed & _MASK) ^ ((salt & _MASK) * 0xD1B54A32D192ED03 & _MASK)
    _, value = _splitmix64(state)
    return value


class Rng:
    """xoshiro256** stream with the handful of draws the engine needs."""

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int):
        state = seed & _MASK
        state, self._s0 = _splitmix64(state)
        state, self._s1 = _splitmix64(state)
        state, self._s2 = _splitmix64(state)
        state, self._s3 = _splitmix64(state)

    def u64(self) -> int:
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        x = (s1 * 5) & _MASK
        x = ((x << 7) | (x >> 57)) & _MASK
        result = (x * 9) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.u64() >> 11) * (1.0 / (1 << 53))

    def randrange(self, n: int) -> int:
        """Uniform int in [0, n).  Modulo bias is < 2**-60 for the small n used here."""
        if n <= 0:
            raise ValueError("randrange() bound must be positive")
        return self.u64() % n

    def randint(self, a: int, b: int) -> int:
        """Uniform int in [a, b] inclusive."""
        return a + self.randrange(b - a + 1)

    def chance(self, percent: float) -> bool:
        """True with the given probability expressed in percent."""
        return self.random() * 100.0 < percent

    def choice(self, seq):
        if not seq:
            raise IndexError("choice() from empty sequence")
        return seq[self.randrange(len(seq))]

    def shuffle(self, seq: list) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.randrange(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def roll(self, count: int, sides: int) -> int:
        """Sum of ``count`` dice with ``sides`` faces."""
        total = 0
        for _ in range(count):
            total += 1 + self.u64() % sides
        return total

    def fork(self) -> "Rng":
        """Independent child stream; advances this stream by one draw."""
        return Rng(self.u64())
