"""Self-contained deterministic PRNG used for splits, shuffles, and weight init.

Every random choice in the pipeline flows through :class:`Xorshift64Star` so
that results are reproducible from a single integer seed on any platform,
independent of numpy's generator lineup. The algorithm is fixed and documented
here on purpose: given the same seed, any implementation of these few lines
must produce identical splits and initial weights.

Algorithm
---------
State is a nonzero 64-bit integer. Seeding passes the user seed through one
splitmix64 scramble so that small seeds (0, 1, 2, ...) land on well-mixed
states. Each draw advances the state with the xorshift64* recurrence::

    x ^= x >> 12
    x ^= (x << 25) & 2**64-1
    x ^= x >> 27
    output = (x * 2685821657736338717) & 2**64-1

Doubles in [0, 1) take the top 53 bits of the output. Shuffling is a
Fisher-Yates pass from the last element down, with ``j = draw % (i + 1)``.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class Xorshift64Star:
    """xorshift64* generator with splitmix64 seeding."""

    def __init__(self, seed: int):
        state = _splitmix64(seed & _MASK64)
        if state == 0:
            state = 0x9E3779B97F4A7C15
        self._state = state

    def next_uint64(self) -> int:
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self._state = x
        return (x * 2685821657736338717) & _MASK64

    def random(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_uint64() >> 11) * 2.0 ** -53

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.random()

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle, descending index order."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_uint64() % (i + 1)
            items[i], items[j] = items[j], items[i]

    def permutation(self, n: int) -> list[int]:
        indices = list(range(n))
        self.shuffle(indices)
        return indices
