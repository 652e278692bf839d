"""Seeded, portable random streams.

Every random draw in the package comes from :class:`Rng`, a thin layer over
NumPy's ``PCG64`` bit generator. Only the raw 64-bit output of ``PCG64`` is
consumed (never NumPy's distribution methods, whose algorithms may change
between releases), so a given seed yields the same stream on every platform
and NumPy version.

Independent sub-streams are derived with :func:`derive_seed`, which hashes the
master seed together with integer keys (e.g. a trial index) through
``numpy.random.SeedSequence``. Parallel workers must use derived seeds; the
outcome of a trial then depends only on ``(seed, keys)``, never on scheduling.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

SEED_MASK = (1 << 64) - 1
GENERATOR_NAME = "PCG64 (numpy.random.PCG64, raw 64-bit output)"

_DOUBLE_SCALE = 1.0 / (1 << 53)


def check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= SEED_MASK:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def derive_seed(seed: int, *keys: int) -> int:
    """Hash ``seed`` and ``keys`` into a fresh 64-bit seed."""
    entropy = [check_seed(seed)] + [int(k) for k in keys]
    state = np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)
    return int(state[0])


class Rng:
    """Deterministic random stream for a 64-bit seed."""

    def __init__(self, seed: int):
        self.seed = check_seed(seed)
        self._bitgen = np.random.PCG64(self.seed)

    def raw(self, size: int) -> np.ndarray:
        """``size`` raw 64-bit words as a uint64 array."""
        return self._bitgen.random_raw(size)

    def uniforms(self, size: int) -> np.ndarray:
        """``size`` doubles in [0, 1), 53 bits each, one word per double."""
        return (self.raw(size) >> np.uint64(11)).astype(np.float64) * _DOUBLE_SCALE

    def random(self) -> float:
        return float(self.uniforms(1)[0])

    def bits(self, nbits: int) -> int:
        """A uniform integer with ``nbits`` random bits (high word first)."""
        if nbits <= 0:
            return 0
        words = (nbits + 63) // 64
        value = 0
        for w in self.raw(words).tolist():
            value = (value << 64) | int(w)
        return value >> (64 * words - nbits)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``: ceil(log2 bound)-bit draws, rejecting overshoot."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        nbits = (bound - 1).bit_length()
        while True:
            x = self.bits(nbits)
            if x < bound:
                return x

    def choice(self, items):
        return items[self.below(len(items))]

    def shuffle(self, items: list) -> None:
        for j in range(len(items) - 1, 0, -1):
            m = self.below(j + 1)
            items[j], items[m] = items[m], items[j]
