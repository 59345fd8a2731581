"""Bit-vector search points, bi-objective vectors, dominance, and the Pareto archive.

Objective semantics throughout: maximize the fitness value ``f``, minimize the
cost value ``cost``. Infeasible vectors (cost above the budget) compare as if
their fitness were -inf, so any feasible vector strictly dominates them.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class Dominance(Enum):
    """How one objective vector relates to another."""

    STRICT = "strict"
    WEAK_ONLY = "weak-only"
    INCOMPARABLE = "incomparable"
    DOMINATED_BY = "dominated-by"


class BitVector:
    """Immutable fixed-length bit string, the search point x in {0,1}^n."""

    __slots__ = ("arr", "n", "_ones")

    def __init__(self, bits):
        arr = np.array(bits, dtype=bool)
        if arr.ndim != 1:
            raise ValueError("bits must be one-dimensional")
        if arr.size == 0:
            raise ValueError("dimension must be positive")
        arr.setflags(write=False)
        self.arr = arr
        self.n = arr.size
        self._ones = None

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "BitVector":
        # internal: adopt an array without copying
        self = object.__new__(cls)
        arr.setflags(write=False)
        self.arr = arr
        self.n = arr.size
        self._ones = None
        return self

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        if n < 1:
            raise ValueError("dimension must be positive")
        return cls._wrap(np.zeros(n, dtype=bool))

    @classmethod
    def from_indices(cls, n: int, indices) -> "BitVector":
        arr = np.zeros(n, dtype=bool)
        arr[list(indices)] = True
        return cls._wrap(arr)

    def flip(self, positions) -> "BitVector":
        """Return a copy with the given (distinct) positions flipped."""
        arr = self.arr.copy()
        if len(positions) > 8:
            arr[positions] ^= True
        else:
            for p in positions:
                arr[p] = not arr[p]
        return BitVector._wrap(arr)

    def ones(self) -> np.ndarray:
        """Indices of set bits, ascending. Cached; safe because instances are immutable."""
        if self._ones is None:
            self._ones = self.arr.nonzero()[0]
        return self._ones

    @property
    def count(self) -> int:
        return len(self.ones())

    def test(self, i: int) -> bool:
        return bool(self.arr[i])

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.arr, other.arr)

    def __repr__(self) -> str:
        if self.n <= 64:
            return f"BitVector('{''.join('1' if b else '0' for b in self.arr)}')"
        return f"BitVector(n={self.n}, ones={self.count})"


@dataclass(slots=True)
class ObjectiveVector:
    """(fitness, cost) pair with a feasibility flag.

    ``f`` keeps the raw fitness even when infeasible; comparisons treat an
    infeasible vector's fitness as -inf (the infeasibility sentinel).
    """

    f: float
    cost: float
    feasible: bool = True

    @property
    def sort_f(self) -> float:
        return self.f if self.feasible else -math.inf


@dataclass(slots=True)
class Individual:
    """A search point together with its evaluated objective vector."""

    genotype: BitVector
    objectives: ObjectiveVector
    # iteration at which the individual was created (0 = initial search point)
    birth: int = field(default=0, compare=False)
    # opaque per-problem evaluation cache (e.g. the covered-node bitset)
    cache: object = field(default=None, compare=False)


def dominates(a: ObjectiveVector, b: ObjectiveVector) -> Dominance:
    """Relation of ``a`` to ``b`` under maximize-f / minimize-cost semantics.

    Weak dominance: f(a) >= f(b) and cost(a) <= cost(b). Strict dominance is
    weak dominance with differing vectors; WEAK_ONLY means the effective
    vectors are equal.
    """
    fa, fb = a.sort_f, b.sort_f
    a_weak = fa >= fb and a.cost <= b.cost
    b_weak = fb >= fa and b.cost <= a.cost
    if a_weak and b_weak:
        return Dominance.WEAK_ONLY
    if a_weak:
        return Dominance.STRICT
    if b_weak:
        return Dominance.DOMINATED_BY
    return Dominance.INCOMPARABLE


class ParetoArchive:
    """The population P: one individual per non-dominated objective vector.

    Members are kept sorted by cost. Because no member may weakly dominate
    another, fitness is strictly increasing along that order, which makes
    dominance checks and removals O(log |P|) bisections plus contiguous
    deletions. Only feasible individuals are stored; infeasible candidates are
    rejected up front, which is equivalent to inserting them with a -inf
    fitness sentinel once the zero-cost initial point is present (every
    feasible member then strictly dominates them).
    """

    __slots__ = ("_costs", "_members", "_seqs", "_next_seq")

    def __init__(self):
        self._costs: list[float] = []
        self._members: list[Individual] = []
        self._seqs: list[int] = []
        self._next_seq = 0

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self):
        return iter(self._members)

    @property
    def members(self) -> list[Individual]:
        """Members in ascending cost order (copy)."""
        return list(self._members)

    @property
    def costs(self) -> list[float]:
        return list(self._costs)

    def insert(self, ind: Individual) -> bool:
        """Insert ``ind`` unless strictly dominated; evict everything it weakly dominates.

        Returns True when the individual was accepted. An incumbent with an
        equal objective vector is replaced by the newcomer.
        """
        obj = ind.objectives
        if not obj.feasible:
            return False
        c = obj.cost
        f = obj.f
        costs = self._costs
        members = self._members
        j = bisect_right(costs, c)
        if j:
            prev = members[j - 1].objectives
            if prev.f >= f and (prev.f > f or prev.cost < c):
                return False
        i = bisect_left(costs, c)
        k = i
        end = len(members)
        while k < end and members[k].objectives.f <= f:
            k += 1
        if k > i:
            del costs[i:k]
            del members[i:k]
            del self._seqs[i:k]
        costs.insert(i, c)
        members.insert(i, ind)
        self._seqs.insert(i, self._next_seq)
        self._next_seq += 1
        return True

    def best_feasible(self) -> Individual | None:
        """The feasible member with highest fitness.

        Ties break toward lower cost, then earlier insertion. Returns None only
        for an empty archive.
        """
        best = None
        best_key = None
        for ind, seq in zip(self._members, self._seqs):
            obj = ind.objectives
            if not obj.feasible:
                continue
            key = (obj.f, -obj.cost, -seq)
            if best_key is None or key > best_key:
                best = ind
                best_key = key
        return best

    def random_member(self, rng) -> Individual:
        """A member chosen uniformly at random."""
        return self._members[int(rng.integers(0, len(self._members)))]

    def cost_window(self, lo: float, hi: float) -> list[Individual]:
        """Members with lo <= cost <= hi, in ascending cost order."""
        i = bisect_left(self._costs, lo)
        j = bisect_right(self._costs, hi)
        return self._members[i:j]
