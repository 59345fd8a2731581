import math

import numpy as np
import pytest

from swgsemo.core import BitVector
from swgsemo.mutation import (RESAMPLE_CAP, flip_positions, make_rng, standard_bit_mutation,
                              standard_bit_mutation_plus)

DRAWS = 100_000


def test_n1_always_flips():
    rng = make_rng(1)
    x = BitVector.zeros(1)
    for _ in range(50):
        assert standard_bit_mutation(x, rng).count == 1


def test_no_change_frequency_matches_formula():
    # oracle: P[no bit flips] = (1 - 1/n)^n
    n = 20
    expected = (1 - 1 / n) ** n
    rng = make_rng(42)
    unchanged = sum(flip_positions(n, rng).size == 0 for _ in range(DRAWS))
    assert abs(unchanged / DRAWS - expected) < 0.01


def test_expected_hamming_distance_is_one():
    n = 20
    rng = make_rng(42)
    total = sum(flip_positions(n, rng).size for _ in range(DRAWS))
    assert abs(total / DRAWS - 1.0) < 0.02


def test_per_bit_flip_rate_within_three_standard_errors():
    n = 20
    rng = make_rng(3)
    hits = np.zeros(n)
    for _ in range(DRAWS):
        hits[flip_positions(n, rng)] += 1
    p = 1 / n
    tolerance = 3 * math.sqrt(p * (1 - p) / DRAWS)
    assert np.abs(hits / DRAWS - p).max() < tolerance


def test_plus_never_returns_input():
    rng = make_rng(8)
    x = BitVector.from_indices(10, [2, 7])
    for _ in range(5_000):
        assert standard_bit_mutation_plus(x, rng) != x


def test_plus_conditional_distribution_n2():
    # oracle: enumerate the 4 outcomes of two independent 1/2 coin flips and
    # condition on at least one flip: each changed outcome has mass 1/3
    rng = make_rng(7)
    counts = {(0,): 0, (1,): 0, (0, 1): 0}
    for _ in range(DRAWS):
        pos = tuple(sorted(flip_positions(2, rng, force_change=True).tolist()))
        counts[pos] += 1
    for share in counts.values():
        assert abs(share / DRAWS - 1 / 3) < 0.01


def test_same_seed_reproduces_draws_exactly():
    x = BitVector.from_indices(30, [4, 9, 11])
    a = make_rng(123)
    b = make_rng(123)
    for _ in range(200):
        assert standard_bit_mutation(x, a) == standard_bit_mutation(x, b)


def test_input_never_modified():
    rng = make_rng(5)
    x = BitVector.from_indices(15, [3, 8])
    snapshot = x.arr.copy()
    for _ in range(100):
        standard_bit_mutation_plus(x, rng)
    assert np.array_equal(x.arr, snapshot)


def test_resample_cap_guards_against_broken_rng():
    class StuckRng:
        def binomial(self, n, p):
            return 0

    with pytest.raises(RuntimeError, match=str(RESAMPLE_CAP)):
        flip_positions(5, StuckRng(), force_change=True)


def test_rejects_nonpositive_dimension():
    with pytest.raises(ValueError):
        flip_positions(0, make_rng(0))
