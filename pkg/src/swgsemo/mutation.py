"""Standard bit mutation operators and the seeded random source.

All randomness flows through numpy's ``Generator`` seeded with PCG64, whose
draw sequence for a given seed is fixed and platform-independent; one
generator per run, never shared.
"""

from __future__ import annotations

import numpy as np

from .core import BitVector

# Resampling rounds allowed before declaring the RNG broken. The chance of a
# healthy generator drawing this many all-zero flip masks is below e^-368000.
RESAMPLE_CAP = 10**6

_NO_FLIPS = np.empty(0, dtype=np.int64)
_NO_FLIPS.setflags(write=False)


def make_rng(seed: int) -> np.random.Generator:
    """A PCG64 generator; the same seed yields the same draws everywhere."""
    return np.random.default_rng(seed)


def flip_positions(n: int, rng: np.random.Generator, force_change: bool = False) -> np.ndarray:
    """Sample the positions flipped when each of n bits flips with probability 1/n.

    The flip count is binomial(n, 1/n) and the positions a uniform subset of
    that size, which is the same joint distribution as n independent per-bit
    coin flips. With ``force_change`` the whole draw is redone until at least
    one bit flips, matching the resample-until-different mutation loop.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    p = 1.0 / n
    k = int(rng.binomial(n, p))
    if force_change:
        rounds = 0
        while k == 0:
            rounds += 1
            if rounds >= RESAMPLE_CAP:
                raise RuntimeError(
                    "mutation resampling exceeded %d rounds; random source looks broken" % RESAMPLE_CAP
                )
            k = int(rng.binomial(n, p))
    if k == 0:
        return _NO_FLIPS
    if k == 1:
        return rng.integers(0, n, size=1)
    rounds = 0
    while True:
        pos = rng.integers(0, n, size=k)
        if len(set(pos.tolist())) == k:
            return pos
        rounds += 1
        if rounds >= RESAMPLE_CAP:
            raise RuntimeError(
                "mutation resampling exceeded %d rounds; random source looks broken" % RESAMPLE_CAP
            )


class FlipSampler:
    """Per-iteration flip-position draws with batched binomial counts.

    Same joint distribution as ``flip_positions`` (including the
    resample-until-change rounds), but the flip counts are drawn in vectorized
    batches to amortize generator call overhead in the optimization loop.
    """

    __slots__ = ("rng", "n", "force_change", "_counts", "_next")
    BATCH = 4096

    def __init__(self, rng: np.random.Generator, n: int, force_change: bool):
        if n < 1:
            raise ValueError("dimension must be positive")
        self.rng = rng
        self.n = n
        self.force_change = force_change
        self._counts = ()
        self._next = 0

    def _count(self) -> int:
        if self._next >= len(self._counts):
            self._counts = self.rng.binomial(self.n, 1.0 / self.n, size=self.BATCH).tolist()
            self._next = 0
        k = self._counts[self._next]
        self._next += 1
        return k

    def __call__(self) -> list[int]:
        k = self._count()
        if self.force_change:
            rounds = 0
            while k == 0:
                rounds += 1
                if rounds >= RESAMPLE_CAP:
                    raise RuntimeError(
                        "mutation resampling exceeded %d rounds; random source looks broken"
                        % RESAMPLE_CAP)
                k = self._count()
        if k == 0:
            return []
        if k == 1:
            return [int(self.rng.integers(0, self.n))]
        rounds = 0
        while True:
            pos = self.rng.integers(0, self.n, size=k).tolist()
            if len(set(pos)) == k:
                return pos
            rounds += 1
            if rounds >= RESAMPLE_CAP:
                raise RuntimeError(
                    "mutation resampling exceeded %d rounds; random source looks broken"
                    % RESAMPLE_CAP)


def standard_bit_mutation(x: BitVector, rng: np.random.Generator) -> BitVector:
    """Flip each bit of x independently with probability 1/n; x is left untouched."""
    return x.flip(flip_positions(x.n, rng))


def standard_bit_mutation_plus(x: BitVector, rng: np.random.Generator) -> BitVector:
    """Standard bit mutation resampled until the offspring differs from x."""
    return x.flip(flip_positions(x.n, rng, force_change=True))


MUTATIONS = {
    "plain": standard_bit_mutation,
    "plus": standard_bit_mutation_plus,
}
