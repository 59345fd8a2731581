"""Problem instances: the maximum-coverage objective, cost models, and diagnostics.

A problem exposes ``n``, ``budget``, ``evaluate(x)`` and
``evaluate_offspring(y, parent, flipped)``; the optimization loops use nothing
else. ``CoverageInstance`` is the concrete benchmark problem,
``ProblemInstance`` wraps arbitrary oracles for tests and diagnostics.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import BitVector, Individual, ObjectiveVector
from .mutation import make_rng

# 2^n enumeration beyond this is refused outright.
MAX_EXHAUSTIVE_N = 24
MAX_RATIO_N = 12


@dataclass(frozen=True)
class CostModel:
    """How per-node costs are assigned: all ones, or i.i.d. uniform draws.

    The seed belongs to the instance, not to an algorithm run: one cost draw
    is shared by every run on the instance.
    """

    kind: str = "uniform"
    interval: tuple[float, float] = (0.5, 1.5)
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in ("uniform", "random"):
            raise ValueError(f"unknown cost model kind: {self.kind!r}")
        if self.kind == "random":
            lo, hi = self.interval
            if lo >= hi:
                raise ValueError("cost interval must satisfy lo < hi")
            if lo <= 0:
                raise ValueError("cost interval must be positive (every marginal cost > 0)")


@dataclass
class ProblemInstance:
    """Generic monotone objective/cost oracles under a budget."""

    n: int
    objective: Callable[[BitVector], float]
    cost: Callable[[BitVector], float]
    budget: float

    def evaluate(self, x: BitVector) -> ObjectiveVector:
        if x.n != self.n:
            raise ValueError(f"dimension mismatch: got {x.n}, expected {self.n}")
        c = float(self.cost(x))
        return ObjectiveVector(float(self.objective(x)), c, c <= self.budget)

    def evaluate_offspring(self, y: BitVector, parent: Individual | None = None,
                           flipped: np.ndarray | None = None):
        """Evaluate an offspring; generic oracles have no cache, so this is plain evaluate."""
        return self.evaluate(y), None


class CoverageInstance:
    """Maximum coverage on closed neighborhoods with linear node costs.

    The fitness of x is the number of nodes in the union of N(v_i) over the
    selected i; the cost is the sum of the selected node costs; x is feasible
    when that sum does not exceed the budget.
    """

    __slots__ = ("n", "neighborhoods", "node_costs", "budget")

    def __init__(self, neighborhoods, node_costs, budget):
        nbs = list(neighborhoods)
        n = len(nbs)
        if n == 0:
            raise ValueError("instance must have at least one node")
        for v, nb in enumerate(nbs):
            if not (nb >> v) & 1:
                raise ValueError(f"closed neighborhood of node {v} does not contain the node itself")
        costs = np.asarray(node_costs, dtype=np.float64)
        if costs.shape != (n,):
            raise ValueError("node_costs length must equal the number of nodes")
        if np.any(costs <= 0):
            raise ValueError("node costs must all be positive")
        self.n = n
        self.neighborhoods = nbs
        self.node_costs = costs
        self.budget = float(budget)

    @classmethod
    def from_graph(cls, graph, cost_model: CostModel | np.ndarray, budget) -> "CoverageInstance":
        from .graphio import assign_costs, closed_neighborhoods

        if isinstance(cost_model, CostModel):
            costs = assign_costs(graph, cost_model)
        else:
            costs = np.asarray(cost_model, dtype=np.float64)
        return cls(closed_neighborhoods(graph), costs, budget)

    def union_mask(self, x: BitVector) -> int:
        if x.n != self.n:
            raise ValueError(f"dimension mismatch: got {x.n}, expected {self.n}")
        u = 0
        nbs = self.neighborhoods
        for i in x.ones().tolist():
            u |= nbs[i]
        return u

    def coverage(self, x: BitVector) -> int:
        """Number of nodes covered by the selection x."""
        return self.union_mask(x).bit_count()

    # oracle alias so generic diagnostics can treat both instance kinds alike
    def objective(self, x: BitVector) -> float:
        return float(self.coverage(x))

    def _sum_costs(self, idx: np.ndarray) -> float:
        # the single canonical cost summation: equal genotypes always get
        # bit-identical cost values, whatever path produced them
        return float(self.node_costs[idx].sum()) if idx.size else 0.0

    def cost(self, x: BitVector) -> float:
        """Sum of the selected node costs (canonical ascending-index summation)."""
        if x.n != self.n:
            raise ValueError(f"dimension mismatch: got {x.n}, expected {self.n}")
        return self._sum_costs(x.ones())

    def evaluate(self, x: BitVector) -> ObjectiveVector:
        obj, _ = self.evaluate_offspring(x)
        return obj

    def evaluate_offspring(self, y: BitVector, parent: Individual | None = None,
                           flipped=None):
        """Evaluate y, reusing the parent's covered-node bitset when only bits were added.

        ``flipped`` is the sequence of positions where y differs from the
        parent. The cost is always recomputed from scratch in canonical index
        order, so equal genotypes always receive bit-identical objective
        vectors; only the (exact) set union takes the incremental shortcut.
        """
        if y.n != self.n:
            raise ValueError(f"dimension mismatch: got {y.n}, expected {self.n}")
        idx = y.ones()
        cost = self._sum_costs(idx)
        nbs = self.neighborhoods
        u = -1
        if parent is not None and flipped is not None and parent.cache is not None:
            pb = parent.genotype.arr
            if not any(pb[p] for p in flipped):
                u = parent.cache
                for p in flipped:
                    u |= nbs[p]
        if u < 0:
            u = 0
            for i in idx.tolist():
                u |= nbs[i]
        obj = ObjectiveVector(float(u.bit_count()), cost, cost <= self.budget)
        return obj, u


@dataclass(frozen=True)
class MinMarginalGain:
    """Smallest observed single-element cost increase; exact only for linear costs."""

    value: float
    exact: bool


def min_marginal_gain(problem, sample_budget: int = 1000, rng=None) -> MinMarginalGain:
    """The minimum increase of the cost function from setting one extra bit.

    Linear cost functions (coverage instances) admit the exact answer: the
    smallest node cost. Opaque cost oracles are probed on ``sample_budget``
    random (x, i) pairs with x_i = 0; the sampled minimum is only an upper
    estimate of the true value.
    """
    if isinstance(problem, CoverageInstance):
        return MinMarginalGain(float(problem.node_costs.min()), exact=True)
    if rng is None:
        rng = make_rng(0)
    n = problem.n
    best = math.inf
    for _ in range(max(1, sample_budget)):
        arr = rng.integers(0, 2, size=n, dtype=np.int64).astype(bool)
        zeros = np.flatnonzero(~arr)
        if zeros.size == 0:
            continue
        i = int(zeros[int(rng.integers(0, zeros.size))])
        x = BitVector(arr)
        gain = float(problem.cost(x.flip([i]))) - float(problem.cost(x))
        if gain < best:
            best = gain
    return MinMarginalGain(best, exact=False)


def _bits_key(x: BitVector) -> tuple:
    return tuple(int(b) for b in x.arr)


def brute_force_optimum(problem, max_cardinality: int | None = None) -> tuple[float, BitVector]:
    """Exact maximum of the objective over feasible points, by enumeration.

    Without ``max_cardinality`` every subset is tried (refused for n > 24);
    with it, only selections of at most that many elements, which suits
    uniform constraints of small size. Ties break toward the lexicographically
    smallest witness bit string.
    """
    n = problem.n
    if max_cardinality is None:
        if n > MAX_EXHAUSTIVE_N:
            raise ValueError(f"refusing 2^{n} enumeration (n > {MAX_EXHAUSTIVE_N}); "
                             "pass max_cardinality for subset enumeration")
        candidates = (BitVector._wrap(np.array([(m >> i) & 1 for i in range(n)], dtype=bool))
                      for m in range(1 << n))
    else:
        if max_cardinality < 0:
            raise ValueError("max_cardinality must be non-negative")
        candidates = (BitVector.from_indices(n, combo)
                      for k in range(min(max_cardinality, n) + 1)
                      for combo in itertools.combinations(range(n), k))
    best_f = -math.inf
    best_x = None
    best_key = None
    for x in candidates:
        obj = problem.evaluate(x)
        if not obj.feasible:
            continue
        if obj.f > best_f:
            best_f, best_x, best_key = obj.f, x, None
        elif obj.f == best_f:
            if best_key is None:
                best_key = _bits_key(best_x)
            key = _bits_key(x)
            if key < best_key:
                best_x, best_key = x, key
    if best_x is None:
        raise ValueError("no feasible point (is the budget negative?)")
    return best_f, best_x


def submodularity_ratio_bruteforce(problem) -> float:
    """Exact worst-case ratio of fitness gain to cost gain over all x <= y and i.

    Enumerates every pair x <= y and every position i with x_i = y_i = 0, and
    returns the minimum of (f(x + e_i) - f(x)) / (c(y + e_i) - c(y)).
    Diagnostic only; refused for n > 12.
    """
    n = problem.n
    if n > MAX_RATIO_N:
        raise ValueError(f"refusing submodularity-ratio enumeration for n > {MAX_RATIO_N}")
    size = 1 << n
    f_table = np.empty(size)
    c_table = np.empty(size)
    for m in range(size):
        x = BitVector._wrap(np.array([(m >> i) & 1 for i in range(n)], dtype=bool))
        f_table[m] = float(problem.objective(x))
        c_table[m] = float(problem.cost(x))
    best = math.inf
    for y in range(size):
        zero_bits = [1 << i for i in range(n) if not (y >> i) & 1]
        if not zero_bits:
            continue
        x = y
        while True:
            for b in zero_bits:
                denom = c_table[y | b] - c_table[y]
                if denom <= 0:
                    raise ValueError("cost function is not strictly increasing")
                ratio = (f_table[x | b] - f_table[x]) / denom
                if ratio < best:
                    best = ratio
            if x == 0:
                break
            x = (x - 1) & y
    return float(best)
