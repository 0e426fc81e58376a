"""``scuba-bench``: regenerate neutrality grids and heuristic comparisons as CSV."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .._validation import derive_run_seed
from ..nkq import LinkKind, NKqLandscape
from ..search import HEURISTICS
from ..tsp import LatticeTSP
from . import tables
from .csvio import emit_csv
from .experiment import DEFAULT_RUNS, ExperimentSpec, NKqProblem, TSPProblem, run_experiment


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _heuristic_list(text: str) -> list[str]:
    values = [v.strip() for v in text.split(",") if v.strip()]
    bad = [v for v in values if v not in HEURISTICS]
    if bad or not values:
        raise argparse.ArgumentTypeError(f"unknown heuristic(s) {bad}; choose from hc, ss, hc2")
    return values


def _add_common(p, runs_default=None):
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--instance-seed", type=int, default=None,
                   help="instance seed (defaults to --seed)")
    p.add_argument("--out", type=Path, default=None, help="write CSV here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent runs")
    if runs_default is not None:
        p.add_argument("--runs", type=int, default=runs_default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scuba-bench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="mean neutral degree on NKq over (q, K)")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--samples", type=int, default=50000)
    p.add_argument("--q", type=_int_list, default=list(tables.TABLE1_Q))
    p.add_argument("--k", type=_int_list, default=list(tables.TABLE1_K))
    p.add_argument("--kind", choices=[k.value for k in LinkKind], default="random")
    _add_common(p)

    p = sub.add_parser("fig1", help="mean proportion of neutral 2-opt neighbors vs L")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--samples", type=int, default=50000)
    p.add_argument("--l", type=_int_list, default=[8, 10, 15, 20, 30, 50, 100])
    _add_common(p)

    p = sub.add_parser("fig2", help="mean final NKq fitness per heuristic vs K")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--k", type=_int_list, default=list(tables.TABLE1_K))
    p.add_argument("--kind", choices=[k.value for k in LinkKind], default="random")
    p.add_argument("--heuristics", type=_heuristic_list, default=list(tables.ALL_HEURISTICS))
    _add_common(p, DEFAULT_RUNS["nkq"])

    p = sub.add_parser("table2", help="mean/std/best TSPn tour length per heuristic")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--l", type=_int_list, default=list(tables.TABLE2_L))
    p.add_argument("--heuristics", type=_heuristic_list, default=list(tables.ALL_HEURISTICS))
    _add_common(p, DEFAULT_RUNS["tspn"])

    p = sub.add_parser("table3", help="mean evaluation counts on NKq")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--q", type=_int_list, default=list(tables.TABLE1_Q))
    p.add_argument("--k", type=_int_list, default=list(tables.TABLE1_K))
    p.add_argument("--kind", choices=[k.value for k in LinkKind], default="random")
    p.add_argument("--heuristics", type=_heuristic_list, default=list(tables.ALL_HEURISTICS))
    _add_common(p, DEFAULT_RUNS["nkq"])

    p = sub.add_parser("table4", help="mean evaluation counts on TSPn")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--l", type=_int_list, default=list(tables.TABLE2_L))
    p.add_argument("--heuristics", type=_heuristic_list, default=list(tables.ALL_HEURISTICS))
    _add_common(p, DEFAULT_RUNS["tspn"])

    for name, help_ in (("run", "raw per-run CSV for one heuristic"),
                        ("gen", "write or rewrite an instance file")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--problem", choices=["nkq", "tspn"], default=None)
        p.add_argument("--n", type=int, default=64)
        p.add_argument("--k", type=int, default=0)
        p.add_argument("--q", type=int, default=2)
        p.add_argument("--kind", choices=[k.value for k in LinkKind], default="random")
        p.add_argument("--l", type=int, default=10)
        p.add_argument("--instance", type=Path, default=None, help="read the instance from this file")
        if name == "run":
            p.add_argument("--heuristic", choices=sorted(HEURISTICS), required=True)
            p.add_argument("--trace", type=Path, default=None, help="write per-move trace CSV here")
            _add_common(p, None)
            p.add_argument("--runs", type=int, default=None)
        else:
            _add_common(p)
    return parser


def _load_instance(path: Path):
    text = path.read_text()
    head = text.split(None, 1)[0] if text.strip() else ""
    if head == "NKQ":
        return NKqLandscape.loads(text)
    if head == "TSPN":
        return LatticeTSP.loads(text)
    raise ValueError(f"{path}: unrecognized instance file")


def _problem_from_args(args, landscape=None):
    if landscape is not None:
        if isinstance(landscape, NKqLandscape):
            p = landscape.params
            return NKqProblem(p.n, p.k, p.q, p.kind), p.seed
        return TSPProblem(landscape.side, landscape.n), landscape.seed
    if args.problem is None:
        raise ValueError("--problem is required unless --instance is given")
    seed = args.seed if args.instance_seed is None else args.instance_seed
    if args.problem == "nkq":
        return NKqProblem(args.n, args.k, args.q, LinkKind(args.kind)), seed
    return TSPProblem(args.l, args.n), seed


def _cmd_run(args) -> tuple[str, str]:
    landscape = _load_instance(args.instance) if args.instance else None
    problem, instance_seed = _problem_from_args(args, landscape)
    if landscape is None:
        landscape = problem.build(instance_seed)
    runs = args.runs if args.runs is not None else DEFAULT_RUNS[problem.name]
    spec = ExperimentSpec(problem, args.heuristic, runs, args.seed, instance_seed)
    outcomes = run_experiment(spec, n_jobs=args.jobs, landscape=landscape, trace=args.trace is not None)
    rows = [
        {"run": i, "seed": derive_run_seed(args.seed, i), "heuristic": args.heuristic,
         "initial_fitness": o.initial_fitness, "fitness": o.fitness,
         "normalized": landscape.normalize(o.fitness), "steps": o.steps,
         "flat_count": o.flat_count, "gate_count": o.gate_count, "evaluations": o.evaluations}
        for i, o in enumerate(outcomes)
    ]
    if args.trace is not None:
        trace_rows = [
            {"run": i, "move": m, "kind": r.kind, "fitness_before": r.fitness_before,
             "fitness_after": r.fitness_after, "evaluations": r.evaluations}
            for i, o in enumerate(outcomes) for m, r in enumerate(o.trace)
        ]
        args.trace.write_text(emit_csv(trace_rows, "trace"))
    return emit_csv(rows, "runs"), "csv"


def _cmd_gen(args) -> tuple[str, str]:
    if args.instance is not None:
        landscape = _load_instance(args.instance)
    else:
        problem, seed = _problem_from_args(args)
        landscape = problem.build(seed)
    return landscape.dumps(), "instance"


def execute(args) -> str:
    """Run a parsed command and return its output text."""
    iseed = args.seed if getattr(args, "instance_seed", None) is None else args.instance_seed
    cmd = args.command
    if cmd == "table1":
        return emit_csv(tables.table1_rows(args.n, args.samples, args.seed, args.q, args.k, args.kind),
                        "neutral_degree")
    if cmd == "fig1":
        return emit_csv(tables.fig1_rows(args.n, args.samples, args.seed, args.l), "neutral_proportion")
    if cmd in ("fig2", "table3"):
        qs = [args.q] if cmd == "fig2" else args.q
        results = tables.compare(tables.nkq_problems(args.n, qs, args.k, args.kind), args.heuristics,
                                 args.runs, args.seed, iseed, args.jobs)
        if cmd == "fig2":
            return emit_csv(tables.performance_rows(results), "performance")
        return emit_csv(tables.evaluation_rows(results), "evaluations")
    if cmd in ("table2", "table4"):
        results = tables.compare(tables.tsp_problems(args.n, args.l), args.heuristics,
                                 args.runs, args.seed, iseed, args.jobs)
        if cmd == "table2":
            return emit_csv(tables.performance_rows(results), "performance")
        return emit_csv(tables.evaluation_rows(results), "evaluations")
    if cmd == "run":
        return _cmd_run(args)[0]
    if cmd == "gen":
        return _cmd_gen(args)[0]
    raise ValueError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "runs", None) is not None and args.runs < 1:
        parser.error("--runs must be >= 1")
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        text = execute(args)
    except (ValueError, TypeError, OSError) as exc:
        print(f"scuba-bench: error: {exc}", file=sys.stderr)
        return 2
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
