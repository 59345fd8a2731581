"""Batch runner: repeated seeded runs per setting, summaries, p-values, front export.

Seeding scheme (documented so paper-scale reruns are reproducible): run k of
algorithm a uses seed = base_seed XOR the first 8 bytes of
SHA-256(f"{a}/{k}"); random node costs use the cost-model seed, which defaults
to base_seed XOR SHA-256("costs") and is drawn once per setting, so both
algorithms and all repetitions see identical costs.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .algorithms import ALGORITHMS, AlgorithmConfig, RunResult
from .graphio import Graph, assign_costs, load_graph
from .problems import CostModel, CoverageInstance
from .stats import mann_whitney_u, summarize

BUDGET_RULES = ("log2n", "sqrtn", "n20", "n10", "explicit")
WORKERS_ENV = "SWGSEMO_WORKERS"

_MASK64 = (1 << 64) - 1


def derive_seed(base_seed: int, *parts) -> int:
    """Stable 64-bit per-task seed: base_seed XOR SHA-256 of the joined parts."""
    digest = hashlib.sha256("/".join(str(p) for p in parts).encode()).digest()
    return (base_seed ^ int.from_bytes(digest[:8], "big")) & _MASK64


def resolve_budget(rule: str, value: float | None, n: int) -> float:
    """Effective budget for a rule; the scaling rules floor to integers."""
    if rule == "explicit":
        if value is None:
            raise ValueError("explicit budget rule needs a value")
        return float(value)
    if rule == "log2n":
        return float(math.floor(math.log2(n)))
    if rule == "sqrtn":
        return float(math.floor(math.sqrt(n)))
    if rule == "n20":
        return float(n // 20)
    if rule == "n10":
        return float(n // 10)
    raise ValueError(f"unknown budget rule: {rule!r}")


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class ExperimentConfig:
    """One instance (graph + cost model + budget) crossed with t_max values and algorithms."""

    graph_path: str | Path
    cost: CostModel = CostModel()
    budget_rule: str = "explicit"
    budget: float | None = None
    t_max_values: tuple[int, ...] = (100_000,)
    repetitions: int = 30
    base_seed: int = 1
    algorithms: tuple[str, ...] = ("gsemo", "sw-gsemo")
    mutation: str = "plus"
    workers: int | None = None

    def __post_init__(self):
        if self.budget_rule not in BUDGET_RULES:
            raise ValueError(f"unknown budget rule: {self.budget_rule!r}")
        if self.budget_rule == "explicit" and self.budget is None:
            raise ValueError("explicit budget rule needs a value")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        if not self.t_max_values:
            raise ValueError("at least one t_max value is required")
        for name in self.algorithms:
            if name not in ALGORITHMS:
                raise ValueError(f"unknown algorithm: {name!r}")
        if not self.algorithms:
            raise ValueError("at least one algorithm is required")


@dataclass(frozen=True)
class SettingRecord:
    """Samples and summary statistics for one (algorithm, budget, t_max) cell."""

    graph: str
    algorithm: str
    budget: float
    t_max: int
    best_f: tuple[float, ...]
    archive_sizes: tuple[int, ...]
    mean: float
    std: float
    pop_mean: float
    pop_std: float
    p_value: float | None  # vs the other algorithm's best_f sample, if any


@dataclass(frozen=True)
class ExperimentReport:
    """All per-setting records of one experiment, plus instance metadata."""

    graph: str
    n: int
    budget: float
    cost_kind: str
    base_seed: int
    records: tuple[SettingRecord, ...]

    def runs_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["graph", "B", "t_max", "algorithm", "run", "best_f", "final_pop"])
        for rec in self.records:
            for run, (f, pop) in enumerate(zip(rec.best_f, rec.archive_sizes)):
                writer.writerow([rec.graph, _num(rec.budget), rec.t_max,
                                 rec.algorithm, run, _num(f), pop])
        return buf.getvalue()

    def summary_dict(self) -> dict:
        return {
            "graph": self.graph,
            "n": self.n,
            "budget": _num(self.budget),
            "cost": self.cost_kind,
            "base_seed": self.base_seed,
            "settings": [
                {
                    "algorithm": rec.algorithm,
                    "budget": _num(rec.budget),
                    "t_max": rec.t_max,
                    "runs": len(rec.best_f),
                    "mean": rec.mean,
                    "std": rec.std,
                    "pop_mean": rec.pop_mean,
                    "pop_std": rec.pop_std,
                    "p_value": rec.p_value,
                    "significant": None if rec.p_value is None else rec.p_value <= 0.05,
                    "best_f": [_num(v) for v in rec.best_f],
                    "archive_sizes": list(rec.archive_sizes),
                }
                for rec in self.records
            ],
        }

    def summary_json(self) -> str:
        return json.dumps(self.summary_dict(), indent=2, sort_keys=True) + "\n"

    def write_csv(self, path) -> None:
        Path(path).write_text(self.runs_csv(), encoding="utf-8")

    def write_json(self, path) -> None:
        Path(path).write_text(self.summary_json(), encoding="utf-8")


def _num(x: float):
    """Ints stay ints in serialized output; floats keep full repr precision."""
    xf = float(x)
    return int(xf) if xf.is_integer() and abs(xf) < 2**53 else xf


def export_front(result: RunResult) -> list[tuple[float, float]]:
    """(cost, fitness) per archive member, ascending in cost."""
    records = [(m.objectives.cost, m.objectives.f) for m in result.final_archive]
    records.sort()
    return records


def write_front_records(records, path) -> None:
    """Write one front as the plain cost,f CSV."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["cost", "f"])
        for cost, f in records:
            writer.writerow([_num(cost), _num(f)])


def write_front_csv(fronts, path) -> None:
    """Write labeled fronts as CSV rows (algorithm, t_max, cost, f)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["algorithm", "t_max", "cost", "f"])
        for label, t_max, records in fronts:
            for cost, f in records:
                writer.writerow([label, t_max, _num(cost), _num(f)])


# -- worker-pool plumbing ----------------------------------------------------

_WORKER_INSTANCE: CoverageInstance | None = None


def _init_worker(instance: CoverageInstance) -> None:
    global _WORKER_INSTANCE
    _WORKER_INSTANCE = instance


def _run_task(args) -> tuple[float, float, int]:
    algorithm, t_max, seed, mutation = args
    return _run_single(_WORKER_INSTANCE, algorithm, t_max, seed, mutation)


def _run_single(instance, algorithm, t_max, seed, mutation) -> tuple[float, float, int]:
    config = AlgorithmConfig(t_max=t_max, mutation=mutation, seed=seed)
    result = ALGORITHMS[algorithm](instance, config)
    best = result.best
    return best.objectives.f, best.objectives.cost, len(result.final_archive)


def run_experiment(config: ExperimentConfig, graph: Graph | None = None) -> ExperimentReport:
    """Run every (algorithm, t_max) cell of the config and aggregate the samples.

    The graph may be passed directly to skip re-parsing; otherwise it is loaded
    from ``config.graph_path``. Deterministic for a fixed config, regardless of
    worker count.
    """
    if graph is None:
        graph = load_graph(config.graph_path)
    name = _graph_name(config.graph_path)
    budget = resolve_budget(config.budget_rule, config.budget, graph.n)
    cost_model = config.cost
    if cost_model.kind == "random" and cost_model.seed is None:
        cost_model = CostModel("random", cost_model.interval,
                               derive_seed(config.base_seed, "costs"))
    costs = assign_costs(graph, cost_model)
    instance = CoverageInstance.from_graph(graph, costs, budget)

    tasks = []
    for t_max in config.t_max_values:
        for algorithm in config.algorithms:
            for k in range(config.repetitions):
                seed = derive_seed(config.base_seed, algorithm, k)
                tasks.append((algorithm, t_max, seed, config.mutation))

    workers = config.workers if config.workers is not None else default_workers()
    workers = max(1, min(workers, len(tasks)))
    if workers == 1:
        outcomes = [_run_single(instance, *task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                 initargs=(instance,)) as pool:
            outcomes = list(pool.map(_run_task, tasks, chunksize=1))

    records: list[SettingRecord] = []
    idx = 0
    for t_max in config.t_max_values:
        cell: dict[str, tuple[list[float], list[int]]] = {}
        for algorithm in config.algorithms:
            fs, pops = [], []
            for _ in range(config.repetitions):
                f, _cost, pop = outcomes[idx]
                idx += 1
                fs.append(f)
                pops.append(pop)
            cell[algorithm] = (fs, pops)
        for algorithm in config.algorithms:
            fs, pops = cell[algorithm]
            others = [a for a in config.algorithms if a != algorithm]
            p_value = None
            if len(others) == 1:
                p_value = mann_whitney_u(fs, cell[others[0]][0])
            mean, std = summarize(fs)
            pop_mean, pop_std = summarize(pops)
            records.append(SettingRecord(
                graph=name, algorithm=algorithm, budget=budget, t_max=t_max,
                best_f=tuple(fs), archive_sizes=tuple(pops),
                mean=mean, std=std, pop_mean=pop_mean, pop_std=pop_std,
                p_value=p_value))
    return ExperimentReport(graph=name, n=graph.n, budget=budget,
                            cost_kind=cost_model.kind, base_seed=config.base_seed,
                            records=tuple(records))


def _graph_name(path) -> str:
    name = Path(path).name
    for suffix in (".gz", ".mtx", ".edges", ".txt", ".el", ".edgelist"):
        if name.endswith(suffix):
            name = name[: -len(suffix)]
    return name or str(path)
