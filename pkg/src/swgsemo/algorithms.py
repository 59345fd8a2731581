"""The GSEMO and sliding-window GSEMO loops, sliding selection, and budget recommenders.

Both loops start from the all-zeros point, run exactly ``t_max`` iterations of
select-mutate-insert, and differ only in parent selection: GSEMO picks
uniformly from the archive, the sliding-window variant picks uniformly from
the members whose cost lies in the window around (t / t_max) * B, falling back
to the whole archive when that window is empty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .core import BitVector, Individual, ParetoArchive
from .mutation import MUTATIONS, FlipSampler, make_rng


@dataclass(frozen=True)
class AlgorithmConfig:
    """Per-run knobs: evaluation budget, mutation operator, seed, trace cadence."""

    t_max: int
    mutation: str = "plus"
    seed: int = 0
    trace_period: int = 0

    def __post_init__(self):
        if self.t_max < 0:
            raise ValueError("t_max must be non-negative")
        if self.mutation not in MUTATIONS:
            raise ValueError(f"unknown mutation operator: {self.mutation!r}")
        if self.trace_period < 0:
            raise ValueError("trace_period must be non-negative")


class TracePoint(NamedTuple):
    iteration: int
    best_f: float
    archive_size: int


class SelectionEvent(NamedTuple):
    """Instrumentation record emitted once per sliding-selection call."""

    t: int
    scheduled: bool  # t <= t_max, i.e. the window schedule applied
    window_lo: float
    window_hi: float
    window_size: int
    fallback: bool  # scheduled window was empty, fell back to the whole archive
    chosen_cost: float


@dataclass
class RunResult:
    """Outcome of one optimization run."""

    final_archive: ParetoArchive
    best: Individual | None
    evaluations: int  # fitness evaluations, including the initial all-zeros point
    trace: tuple[TracePoint, ...]


def recommended_tmax_uniform(n: int, r: int) -> int:
    """Iteration budget ceil(4 e r n ln n) for a uniform constraint of size r."""
    if n < 2:
        raise ValueError("n must be at least 2 (ln n would not be positive)")
    if r < 1:
        raise ValueError("r must be at least 1")
    return math.ceil(4 * math.e * r * n * math.log(n))


def recommended_tmax_general(n: int, budget: float, delta: float) -> int:
    """Iteration budget ceil(2 e n (B/delta) ln(n + B/delta)) for a general cost constraint."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if budget <= 0:
        raise ValueError("budget must be positive")
    if delta <= 0:
        raise ValueError("delta must be positive")
    ratio = budget / delta
    return math.ceil(2 * math.e * n * ratio * math.log(n + ratio))


def sliding_selection(archive: ParetoArchive, t: int, t_max: int, budget: float,
                      rng, observer: Callable[[SelectionEvent], None] | None = None) -> Individual:
    """Pick a parent whose cost tracks the linear schedule from 0 to the budget.

    For t <= t_max the window is [floor(c), ceil(c)] with c = (t / t_max) * B;
    an empty window falls back to the whole archive. Beyond t_max selection is
    uniform over the whole archive.
    """
    scheduled = t <= t_max
    fallback = False
    if scheduled:
        c_hat = (t / t_max) * budget
        lo = float(math.floor(c_hat))
        hi = float(math.ceil(c_hat))
        window = archive.cost_window(lo, hi)
        if window:
            chosen = window[int(rng.integers(0, len(window)))]
            size = len(window)
        else:
            fallback = True
            chosen = archive.random_member(rng)
            size = len(archive)
    else:
        lo = hi = math.nan
        chosen = archive.random_member(rng)
        size = len(archive)
    if observer is not None:
        observer(SelectionEvent(t, scheduled, lo, hi, size, fallback,
                                chosen.objectives.cost))
    return chosen


def _uniform_selection(archive: ParetoArchive, t: int, rng) -> Individual:
    return archive.random_member(rng)


def _optimize(problem, config: AlgorithmConfig,
              select: Callable[[ParetoArchive, int, object], Individual]) -> RunResult:
    rng = make_rng(config.seed)
    n = problem.n
    sample_flips = FlipSampler(rng, n, force_change=config.mutation == "plus")
    x0 = BitVector.zeros(n)
    obj0, cache0 = problem.evaluate_offspring(x0)
    archive = ParetoArchive()
    archive.insert(Individual(x0, obj0, birth=0, cache=cache0))
    evaluations = 1
    best_f = obj0.f if obj0.feasible else -math.inf
    period = config.trace_period
    t_max = config.t_max
    trace: list[TracePoint] = []
    for t in range(1, t_max + 1):
        parent = select(archive, t, rng)
        pos = sample_flips()
        y = parent.genotype.flip(pos)
        obj, cache = problem.evaluate_offspring(y, parent, pos)
        evaluations += 1
        if archive.insert(Individual(y, obj, birth=t, cache=cache)):
            if obj.f > best_f:
                best_f = obj.f
        if period and (t % period == 0 or t == t_max):
            trace.append(TracePoint(t, best_f, len(archive)))
    return RunResult(final_archive=archive, best=archive.best_feasible(),
                     evaluations=evaluations, trace=tuple(trace))


def gsemo_run(problem, config: AlgorithmConfig) -> RunResult:
    """Classical loop: uniform parent selection from the whole archive."""
    return _optimize(problem, config, _uniform_selection)


def sw_gsemo_run(problem, config: AlgorithmConfig,
                 selection_observer: Callable[[SelectionEvent], None] | None = None) -> RunResult:
    """Sliding-window loop: parent selection follows the cost schedule."""
    t_max = config.t_max
    budget = problem.budget

    def select(archive, t, rng):
        return sliding_selection(archive, t, t_max, budget, rng, selection_observer)

    return _optimize(problem, config, select)


ALGORITHMS = {
    "gsemo": gsemo_run,
    "sw-gsemo": sw_gsemo_run,
}
