"""Scaling table: full pruned problem vs banded pipeline on random instances."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .generator import GeneratorParams, generate
from .heuristics import enumerate_candidates
from .pipeline import run, run_full
from .solvers import SolverConfig

COLUMNS = (
    "K", "D", "reps", "J", "I",
    "half_grid", "mean_full_variables", "mean_total_variables", "mean_largest_subproblem",
    "mean_alpha", "mean_score_full", "mean_score_segmented", "score_ratio",
    "mean_seconds_full", "mean_seconds_segmented",
)
TIMING_COLUMNS = ("mean_seconds_full", "mean_seconds_segmented")


def rep_seed(seed: int, K: int, rep: int) -> int:
    """Seed for one repetition, shared by every D of that (K, rep)."""
    return int(np.random.SeedSequence([seed, K, rep]).generate_state(1, np.uint64)[0])


@dataclass
class Trial:
    K: int
    D: int
    rep: int
    full_variables: int
    total_variables: int
    largest_subproblem: int
    alpha: float
    score_full: float
    score_segmented: float
    seconds_full: float
    seconds_segmented: float


def run_trials(
    sizes: Sequence[int],
    bands: Sequence[int],
    reps: int,
    *,
    vacancy_fraction: float = 0.4,
    solver: SolverConfig | None = None,
    seed: int = 0,
    generator: GeneratorParams | None = None,
) -> list[Trial]:
    solver = solver or SolverConfig()
    template = generator or GeneratorParams(total_jobs=1, vacancy_fraction=vacancy_fraction)
    trials = []
    for K in sizes:
        for rep in range(reps):
            s = rep_seed(seed, K, rep)
            instance = generate(replace(template, total_jobs=K, vacancy_fraction=vacancy_fraction, seed=s))
            config = solver.with_seed(s)
            full_vars = len(enumerate_candidates(instance, instance.vacants, instance.assigned))
            started = time.perf_counter()
            full = run_full(instance, config)
            seconds_full = time.perf_counter() - started
            for D in bands:
                started = time.perf_counter()
                report = run(instance, D, config)
                trials.append(
                    Trial(K, D, rep, full_vars, report.total_variables, report.largest_subproblem,
                          report.alpha_estimate, full.total_score, report.total_score,
                          seconds_full, time.perf_counter() - started)
                )
    return trials


def summarize(trials: Iterable[Trial], vacancy_fraction: float = 0.4) -> list[dict]:
    cells: dict[tuple[int, int], list[Trial]] = {}
    for t in trials:
        cells.setdefault((t.K, t.D), []).append(t)
    rows = []
    for (K, D), group in cells.items():
        probe = GeneratorParams(total_jobs=K, vacancy_fraction=vacancy_fraction)
        J, I = probe.num_assigned, probe.num_vacant

        def mean(attr):
            return float(np.mean([getattr(t, attr) for t in group]))

        score_full = mean("score_full")
        score_seg = mean("score_segmented")
        rows.append({
            "K": K, "D": D, "reps": len(group), "J": J, "I": I,
            "half_grid": J * I / 2,
            "mean_full_variables": mean("full_variables"),
            "mean_total_variables": mean("total_variables"),
            "mean_largest_subproblem": mean("largest_subproblem"),
            "mean_alpha": mean("alpha"),
            "mean_score_full": score_full,
            "mean_score_segmented": score_seg,
            "score_ratio": score_seg / score_full if score_full > 0 else 1.0,
            "mean_seconds_full": mean("seconds_full"),
            "mean_seconds_segmented": mean("seconds_segmented"),
        })
    return rows


def benchmark(sizes, bands, reps, **kwargs) -> list[dict]:
    trials = run_trials(sizes, bands, reps, **kwargs)
    return summarize(trials, kwargs.get("vacancy_fraction", 0.4))


def format_table(rows: Sequence[dict], delimiter: str = ",") -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=COLUMNS, delimiter=delimiter, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (f"{v:.6g}" if isinstance(v, float) else v) for k, v in row.items()})
    return out.getvalue()
