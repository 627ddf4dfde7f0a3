"""Command-line entry point.

Exit codes: 0 success, 2 input error, 3 solver capacity exceeded,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import benchmark as bench
from .errors import (
    CapacityError,
    FeasibilityError,
    InstanceFileError,
    InvariantViolation,
    ParameterError,
)
from .generator import GeneratorParams, generate
from .heuristics import enumerate_candidates
from .instance_io import dump_instance, load_instance
from .model import PriorityMode
from .pipeline import PipelineReport, run, run_full
from .qubo import build_qubo, write_coefficients
from .solvers import SolverConfig, SolverKind

EXIT_OK, EXIT_INPUT, EXIT_CAPACITY, EXIT_INTERNAL = 0, 2, 3, 4


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _solver_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--solver", choices=[k.value for k in SolverKind], default="anneal")
    parser.add_argument("--sweeps", type=int, default=1000)
    parser.add_argument("--restarts", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-exact", type=int, default=24, help="variable limit for --solver exact")


def _solver_config(args) -> SolverConfig:
    return SolverConfig(
        kind=SolverKind(args.solver),
        sweeps=args.sweeps,
        restarts=args.restarts,
        seed=args.seed,
        max_exact_vars=args.max_exact,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jrpqubo", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the banded pipeline on an instance file")
    p.add_argument("--instance", required=True, type=Path)
    p.add_argument("--bands", type=int, default=None,
                   help="number of bands D (discrete mode: defaults to the distinct vacant priorities)")
    p.add_argument("--full", action="store_true", help="single band over all vacancies, no rollover")
    p.add_argument("--no-carry", action="store_true", help="do not carry unfilled vacancies forward")
    p.add_argument("--out", type=Path, help="write the JSON report here")
    p.add_argument("--figure", type=Path, help="write a per-band size chart here")
    _solver_args(p)

    p = sub.add_parser("generate", help="write a random instance")
    p.add_argument("--total-jobs", "-K", type=int, required=True)
    p.add_argument("--vacancy-fraction", "-p", type=float, default=0.4)
    p.add_argument("--levels", type=int, default=4, help="priority levels in discrete mode")
    p.add_argument("--affinity-max", type=int, default=5)
    p.add_argument("--mode", choices=[m.value for m in PriorityMode], default="continuous")
    p.add_argument("--c-priority", type=float, default=1.0)
    p.add_argument("--c-affinity", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("benchmark", help="compare full and banded solves on random instances")
    p.add_argument("--sizes", type=_int_list, default=[8, 12, 16])
    p.add_argument("--bands", type=_int_list, default=[1, 2, 4])
    p.add_argument("--reps", type=int, default=20)
    p.add_argument("--vacancy-fraction", "-p", type=float, default=0.4)
    p.add_argument("--out", type=Path, help="CSV table; a .png figure is written alongside")
    p.add_argument("--no-figure", action="store_true")
    _solver_args(p)

    p = sub.add_parser("qubo-export", help="write the coefficient file of the full problem")
    p.add_argument("--instance", required=True, type=Path)
    p.add_argument("--no-prune", action="store_true", help="keep every (vacant, agent) pair")
    p.add_argument("--out", type=Path)
    return parser


def summary(report: PipelineReport) -> str:
    lines = []
    for b in report.per_band:
        flag = "  [repaired]" if b.repaired else ""
        lines.append(
            f"band {b.index}: {b.agents_considered}x{b.vacants_considered} grid, "
            f"{b.variables} variables, {b.vacants_filled} moves{flag}"
        )
        for m in b.moves:
            lines.append(f"  {m.agent}: {m.vacated} -> {m.vacant}  (score {m.score:.4g})")
    lines.append(f"moves: {len(report.history)} across {len(report.per_band)} bands")
    lines.append(f"total score: {report.total_score:.6g}")
    lines.append(f"total variables: {report.total_variables} (largest {report.largest_subproblem})")
    lines.append(f"alpha estimate: {report.alpha_estimate:.4g}")
    lines.append("assigned: " + ", ".join(f"{job}={agent}" for job, agent in report.final_assigned))
    if report.final_vacant:
        lines.append("still vacant: " + ", ".join(report.final_vacant))
    if report.dropped:
        lines.append("dropped vacancies: " + ", ".join(report.dropped))
    return "\n".join(lines)


def _write(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    config = _solver_config(args)
    if args.full:
        report = run_full(instance, config)
    else:
        report = run(instance, args.bands, config, carry_unfilled=not args.no_carry)
    print(summary(report))
    if args.out:
        args.out.write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    if args.figure:
        from .plotting import plot_bands

        plot_bands(report, args.figure)
    return EXIT_OK


def cmd_generate(args) -> int:
    params = GeneratorParams(
        total_jobs=args.total_jobs,
        vacancy_fraction=args.vacancy_fraction,
        levels=args.levels,
        affinity_count_max=args.affinity_max,
        seed=args.seed,
        mode=PriorityMode(args.mode),
        c_priority=args.c_priority,
        c_affinity=args.c_affinity,
    )
    _write(dump_instance(generate(params)), args.out)
    return EXIT_OK


def cmd_benchmark(args) -> int:
    rows = bench.benchmark(
        args.sizes, args.bands, args.reps,
        vacancy_fraction=args.vacancy_fraction,
        solver=_solver_config(args),
        seed=args.seed,
    )
    _write(bench.format_table(rows), args.out)
    if args.out and not args.no_figure:
        from .plotting import plot_benchmark

        plot_benchmark(rows, args.out.with_suffix(".png"))
    return EXIT_OK


def cmd_qubo_export(args) -> int:
    instance = load_instance(args.instance)
    if args.no_prune:
        pairs = [(v.job, a.agent) for v in instance.vacants for a in instance.assigned]
    else:
        pairs = enumerate_candidates(instance, instance.vacants, instance.assigned).pairs
    problem = build_qubo(instance, pairs)
    if args.out is None:
        write_coefficients(problem, sys.stdout)
    else:
        with args.out.open("w") as stream:
            write_coefficients(problem, stream)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "generate": cmd_generate,
    "benchmark": cmd_benchmark,
    "qubo-export": cmd_qubo_export,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (InstanceFileError, ParameterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InvariantViolation, FeasibilityError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
