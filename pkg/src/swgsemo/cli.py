"""Command-line interface: single runs, benchmark grids, fronts, budgets, oracles.

Exit codes: 0 success, 1 usage error, 2 data/parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algorithms import (ALGORITHMS, AlgorithmConfig, recommended_tmax_general,
                         recommended_tmax_uniform)
from .experiments import (BUDGET_RULES, ExperimentConfig, default_workers, derive_seed,
                          export_front, resolve_budget, run_experiment, write_front_csv,
                          write_front_records)
from .graphio import GraphParseError, assign_costs, load_graph
from .problems import CostModel, CoverageInstance, brute_force_optimum

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags by default; the CLI contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="edge-list or MatrixMarket file (.gz ok)")
    p.add_argument("--cost", choices=["uniform", "random"], default="uniform",
                   help="cost model (default: uniform)")
    p.add_argument("--cost-interval", nargs=2, type=float, default=[0.5, 1.5],
                   metavar=("LO", "HI"), help="interval for random costs (default: 0.5 1.5)")
    p.add_argument("--cost-seed", type=int, default=None,
                   help="seed for random costs (default: derived from --seed)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--budget", type=float, help="explicit budget value")
    group.add_argument("--budget-rule", choices=[r for r in BUDGET_RULES if r != "explicit"],
                       help="budget from the node count: log2n, sqrtn, n20, n10")


def _build_instance(args, base_seed: int):
    # flag-level validation happens before any file is touched
    try:
        if args.budget is not None and args.budget < 0:
            raise ValueError("budget must be non-negative")
        seed = args.cost_seed
        if args.cost == "random" and seed is None:
            seed = derive_seed(base_seed, "costs")
        model = CostModel(args.cost, tuple(args.cost_interval),
                          seed if args.cost == "random" else None)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    graph = load_graph(args.graph)
    budget = resolve_budget(args.budget_rule or "explicit", args.budget, graph.n)
    costs = assign_costs(graph, model)
    instance = CoverageInstance.from_graph(graph, costs, budget)
    return graph, model, budget, instance


def _emit(args, payload: dict, human_lines) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _num(x: float):
    xf = float(x)
    return int(xf) if xf.is_integer() and abs(xf) < 2**53 else xf


def cmd_run(args) -> int:
    if args.tmax < 0:
        raise UsageError("--tmax must be non-negative")
    graph, model, budget, instance = _build_instance(args, args.seed)
    config = AlgorithmConfig(t_max=args.tmax, mutation=args.mutation,
                             seed=args.seed, trace_period=args.trace)
    result = ALGORITHMS[args.algo](instance, config)
    best = result.best
    front = export_front(result)
    if args.front_out:
        write_front_records(front, args.front_out)
    if args.plot_out:
        from .figures import save_front_figure
        save_front_figure([(f"{args.algo} t_max={args.tmax}", front)], args.plot_out,
                          title=f"{Path(args.graph).name}, B={budget:g}")
    payload = {
        "graph": str(args.graph),
        "n": graph.n,
        "edges": graph.edge_count,
        "budget": _num(budget),
        "budget_rule": args.budget_rule or "explicit",
        "cost": model.kind,
        "algorithm": args.algo,
        "mutation": args.mutation,
        "seed": args.seed,
        "t_max": args.tmax,
        "best_f": _num(best.objectives.f),
        "best_cost": _num(best.objectives.cost),
        "archive_size": len(result.final_archive),
        "evaluations": result.evaluations,
        "trace": [list(pt) for pt in result.trace],
    }
    human = [
        f"graph: {args.graph} (n={graph.n}, edges={graph.edge_count})",
        f"budget: {_num(budget)} (rule: {args.budget_rule or 'explicit'}, cost: {model.kind})",
        f"algorithm: {args.algo} (mutation: {args.mutation}, seed: {args.seed}, t_max: {args.tmax})",
        f"best coverage: {_num(best.objectives.f)}",
        f"best cost: {_num(best.objectives.cost)}",
        f"archive size: {len(result.final_archive)}",
        f"evaluations: {result.evaluations}",
    ]
    _emit(args, payload, human)
    return EXIT_OK


def cmd_front(args) -> int:
    graph, model, budget, instance = _build_instance(args, args.seed)
    algos = _parse_algos(args.algos)
    tmaxes = _parse_int_list(args.tmax, "--tmax")
    fronts = []
    rows = []
    summaries = []
    for algo in algos:
        for t_max in tmaxes:
            seed = derive_seed(args.seed, algo, t_max)
            config = AlgorithmConfig(t_max=t_max, mutation=args.mutation, seed=seed)
            result = ALGORITHMS[algo](instance, config)
            front = export_front(result)
            fronts.append((f"{algo} t_max={t_max}", front))
            rows.append((algo, t_max, front))
            best = result.best
            summaries.append({
                "algorithm": algo, "t_max": t_max,
                "best_f": _num(best.objectives.f),
                "best_cost": _num(best.objectives.cost),
                "archive_size": len(result.final_archive),
            })
    if args.out:
        write_front_csv(rows, args.out)
    if args.plot_out:
        from .figures import save_front_figure
        save_front_figure(fronts, args.plot_out,
                          title=f"{Path(args.graph).name}, B={budget:g}, {model.kind} costs")
    payload = {
        "graph": str(args.graph), "n": graph.n, "budget": _num(budget),
        "cost": model.kind, "runs": summaries,
        "front_csv": str(args.out) if args.out else None,
        "figure": str(args.plot_out) if args.plot_out else None,
    }
    human = [f"graph: {args.graph} (n={graph.n}), B={_num(budget)}, cost: {model.kind}"]
    human += [f"{s['algorithm']:9s} t_max={s['t_max']}: best f={s['best_f']}, "
              f"archive size={s['archive_size']}" for s in summaries]
    if args.out:
        human.append(f"front CSV written to {args.out}")
    if args.plot_out:
        human.append(f"figure written to {args.plot_out}")
    _emit(args, payload, human)
    return EXIT_OK


def cmd_bench(args) -> int:
    filecfg = _read_config_file(args.config) if args.config else {}

    def pick(key, builtin, cast=None):
        val = getattr(args, key, None)
        if val is None:
            val = filecfg.get(key, builtin)
            if cast is not None and isinstance(val, str):
                val = cast(val)
        return val

    graph_path = pick("graph", None)
    if graph_path is None:
        raise UsageError("--graph is required (flag or config file)")
    budget = pick("budget", None, float)
    budget_rule = pick("budget_rule", None)
    if budget is None and budget_rule is None:
        raise UsageError("one of --budget or --budget-rule is required")
    if budget is not None and budget_rule is not None:
        raise UsageError("--budget and --budget-rule are mutually exclusive")
    cost_kind = pick("cost", "uniform")
    interval = pick("cost_interval", (0.5, 1.5), _parse_float_pair)
    if isinstance(interval, list):
        interval = tuple(interval)
    base_seed = int(pick("seed", 1, int))
    cost_seed = pick("cost_seed", None, int)
    algos = _parse_algos(pick("algos", "both"))
    tmaxes = _parse_int_list(pick("tmax", "100000"), "--tmax")
    reps = int(pick("reps", 30, int))
    mutation = pick("mutation", "plus")
    workers = pick("workers", None, int)

    try:
        model = CostModel(cost_kind, tuple(interval),
                          cost_seed if cost_kind == "random" else None)
        config = ExperimentConfig(
            graph_path=graph_path, cost=model,
            budget_rule=budget_rule or "explicit", budget=budget,
            t_max_values=tuple(tmaxes), repetitions=reps, base_seed=base_seed,
            algorithms=tuple(algos), mutation=mutation,
            workers=int(workers) if workers is not None else None)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    report = run_experiment(config)
    if args.out_csv:
        report.write_csv(args.out_csv)
    if args.out_json:
        report.write_json(args.out_json)
    if args.plot_out:
        from .figures import save_report_figure
        save_report_figure(report, args.plot_out)

    human = [f"graph: {report.graph} (n={report.n}), B={_num(report.budget)}, "
             f"cost: {report.cost_kind}, runs per setting: {reps}"]
    for rec in report.records:
        p = "-" if rec.p_value is None else f"{rec.p_value:.3f}"
        human.append(f"{rec.algorithm:9s} t_max={rec.t_max}: mean={rec.mean:.1f} "
                     f"std={rec.std:.3f} pop={rec.pop_mean:.1f} p={p}")
    for out in (args.out_csv, args.out_json, args.plot_out):
        if out:
            human.append(f"wrote {out}")
    _emit(args, report.summary_dict() if args.json else {}, human)
    return EXIT_OK


def cmd_tmax(args) -> int:
    results = {}
    human = []
    if args.r is not None:
        if args.n is None:
            raise UsageError("--r needs --n")
        try:
            value = recommended_tmax_uniform(args.n, args.r)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        results["uniform"] = {"n": args.n, "r": args.r, "t_max": value}
        human.append(f"uniform constraint (n={args.n}, r={args.r}): t_max = {value}")
    if args.budget is not None or args.delta is not None:
        if args.budget is None or args.delta is None or args.n is None:
            raise UsageError("general bound needs --n, --budget and --delta")
        try:
            value = recommended_tmax_general(args.n, args.budget, args.delta)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        results["general"] = {"n": args.n, "budget": args.budget,
                              "delta": args.delta, "t_max": value}
        human.append(f"general constraint (n={args.n}, B={args.budget:g}, "
                     f"delta={args.delta:g}): t_max = {value}")
    if not results:
        raise UsageError("nothing to compute: pass --r, or --budget with --delta")
    _emit(args, results, human)
    return EXIT_OK


def cmd_oracle(args) -> int:
    graph, model, budget, instance = _build_instance(args, args.cost_seed or 0)
    try:
        f_star, witness = brute_force_optimum(instance, args.max_cardinality)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    nodes = [int(i) for i in witness.ones()]
    payload = {
        "graph": str(args.graph), "n": graph.n, "budget": _num(budget),
        "cost": model.kind, "optimum": _num(f_star), "witness_nodes": nodes,
        "witness_cost": _num(instance.cost(witness)),
    }
    human = [
        f"graph: {args.graph} (n={graph.n}), B={_num(budget)}, cost: {model.kind}",
        f"optimum coverage: {_num(f_star)}",
        f"witness nodes: {nodes}",
        f"witness cost: {_num(instance.cost(witness))}",
    ]
    _emit(args, payload, human)
    return EXIT_OK


def _parse_algos(spec) -> list[str]:
    if spec is None or spec == "both":
        return ["gsemo", "sw-gsemo"]
    if isinstance(spec, (list, tuple)):
        names = list(spec)
    else:
        names = [s.strip() for s in str(spec).split(",") if s.strip()]
    for name in names:
        if name not in ALGORITHMS:
            raise UsageError(f"unknown algorithm: {name!r} (choose from gsemo, sw-gsemo)")
    if not names:
        raise UsageError("no algorithms given")
    return names


def _parse_int_list(spec, flag: str) -> list[int]:
    if isinstance(spec, int):
        return [spec]
    try:
        values = [int(s.strip()) for s in str(spec).split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects a comma-separated list of integers") from None
    if not values or any(v < 0 for v in values):
        raise UsageError(f"{flag} expects non-negative integers")
    return values


def _parse_float_pair(spec) -> tuple[float, float]:
    parts = [p for chunk in str(spec).split(",") for p in chunk.split()]
    if len(parts) != 2:
        raise UsageError("cost_interval expects two numbers")
    return float(parts[0]), float(parts[1])


def _read_config_file(path) -> dict[str, str]:
    """Flat `key = value` file; '#' starts a comment; keys match the long flags."""
    cfg = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphParseError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        cfg[key.strip().replace("-", "_")] = value.strip()
    return cfg


def build_parser() -> _Parser:
    parser = _Parser(prog="swgsemo",
                     description="Pareto optimization for budget-constrained maximum coverage: "
                                 "GSEMO and sliding-window GSEMO.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p_run = sub.add_parser("run", help="single optimization run")
    _add_instance_args(p_run)
    p_run.add_argument("--algo", choices=sorted(ALGORITHMS), default="sw-gsemo")
    p_run.add_argument("--tmax", type=int, required=True, help="fitness evaluation budget")
    p_run.add_argument("--seed", type=int, default=1)
    p_run.add_argument("--mutation", choices=["plus", "plain"], default="plus")
    p_run.add_argument("--trace", type=int, default=0, metavar="PERIOD",
                       help="iterations between trace snapshots (0 = off)")
    p_run.add_argument("--front-out", metavar="CSV", help="write the final trade-off front")
    p_run.add_argument("--plot-out", metavar="PNG", help="render the final front to a figure")
    p_run.add_argument("--json", action="store_true", help="machine-readable output")
    p_run.set_defaults(func=cmd_run)

    p_bench = sub.add_parser("bench", help="repeated-run comparison (experiment harness)")
    p_bench.add_argument("--config", help="key = value config file; flags override it")
    p_bench.add_argument("--graph")
    p_bench.add_argument("--cost", choices=["uniform", "random"])
    p_bench.add_argument("--cost-interval", nargs=2, type=float, metavar=("LO", "HI"))
    p_bench.add_argument("--cost-seed", type=int)
    p_bench.add_argument("--budget", type=float)
    p_bench.add_argument("--budget-rule", choices=[r for r in BUDGET_RULES if r != "explicit"])
    p_bench.add_argument("--tmax", help="comma-separated t_max list, e.g. 100000,500000")
    p_bench.add_argument("--reps", type=int, help="runs per setting (default 30)")
    p_bench.add_argument("--seed", type=int, help="base seed (default 1)")
    p_bench.add_argument("--algos", help="comma-separated subset of gsemo,sw-gsemo, or 'both'")
    p_bench.add_argument("--mutation", choices=["plus", "plain"])
    p_bench.add_argument("--workers", type=int,
                         help=f"worker processes (default: $SWGSEMO_WORKERS or CPU count, "
                              f"currently {default_workers()})")
    p_bench.add_argument("--out-csv", metavar="CSV", help="per-run records")
    p_bench.add_argument("--out-json", metavar="JSON", help="summary with means/stds/p-values")
    p_bench.add_argument("--plot-out", metavar="PNG", help="render the summary comparison figure")
    p_bench.add_argument("--json", action="store_true")
    p_bench.set_defaults(func=cmd_bench)

    p_front = sub.add_parser("front", help="trade-off fronts for one or more runs")
    _add_instance_args(p_front)
    p_front.add_argument("--algos", default="both")
    p_front.add_argument("--tmax", required=True, help="comma-separated t_max list")
    p_front.add_argument("--seed", type=int, default=1)
    p_front.add_argument("--mutation", choices=["plus", "plain"], default="plus")
    p_front.add_argument("--out", metavar="CSV", help="write front records")
    p_front.add_argument("--plot-out", metavar="PNG", help="render the fronts to a figure")
    p_front.add_argument("--json", action="store_true")
    p_front.set_defaults(func=cmd_front)

    p_tmax = sub.add_parser("tmax", help="theorem-derived iteration budgets")
    p_tmax.add_argument("--n", type=int, help="problem dimension")
    p_tmax.add_argument("--r", type=int, help="uniform constraint size")
    p_tmax.add_argument("--budget", type=float, help="general constraint budget B")
    p_tmax.add_argument("--delta", type=float, help="minimum marginal cost gain")
    p_tmax.add_argument("--json", action="store_true")
    p_tmax.set_defaults(func=cmd_tmax)

    p_oracle = sub.add_parser("oracle", help="brute-force optimum for small instances")
    _add_instance_args(p_oracle)
    p_oracle.add_argument("--max-cardinality", type=int, default=None,
                          help="enumerate selections of at most this many nodes")
    p_oracle.add_argument("--json", action="store_true")
    p_oracle.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not getattr(args, "func", None):
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"swgsemo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphParseError as exc:
        print(f"swgsemo: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"swgsemo: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
