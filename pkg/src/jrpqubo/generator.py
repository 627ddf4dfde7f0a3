"""Seeded random instances for tests and benchmarks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .model import AffinityTable, AssignedJob, JrpInstance, PriorityMode, VacantJob


@dataclass(frozen=True)
class GeneratorParams:
    """``I = round(p*K)`` vacant jobs and ``J = K - I`` covered ones.

    Every (job, agent) count is drawn from ``1..affinity_count_max`` for
    vacant and covered jobs alike, so the affinity gain of a move is
    symmetric around zero.
    """

    total_jobs: int
    vacancy_fraction: float = 0.4
    levels: int = 4
    affinity_count_max: int = 5
    seed: int = 0
    mode: PriorityMode = PriorityMode.CONTINUOUS
    c_priority: float = 1.0
    c_affinity: float = 0.2

    def __post_init__(self):
        if not isinstance(self.mode, PriorityMode):
            object.__setattr__(self, "mode", PriorityMode(self.mode))
        if self.total_jobs < 1:
            raise ParameterError(f"total_jobs must be >= 1, got {self.total_jobs}")
        if not 0 < self.vacancy_fraction < 1:
            raise ParameterError(f"vacancy fraction must lie in (0, 1), got {self.vacancy_fraction}")
        if self.levels < 1:
            raise ParameterError(f"levels must be >= 1, got {self.levels}")
        if self.affinity_count_max < 1:
            raise ParameterError(f"affinity_count_max must be >= 1, got {self.affinity_count_max}")
        if not 0 <= self.seed < 2**64:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def num_vacant(self) -> int:
        return int(math.floor(self.vacancy_fraction * self.total_jobs + 0.5))

    @property
    def num_assigned(self) -> int:
        return self.total_jobs - self.num_vacant


def generate(params: GeneratorParams) -> JrpInstance:
    rng = np.random.default_rng(params.seed)
    I, J = params.num_vacant, params.num_assigned

    def draw_priorities(size):
        if params.mode is PriorityMode.DISCRETE:
            return rng.integers(1, params.levels + 1, size=size) / params.levels
        return 1.0 - rng.random(size)

    p_assigned = draw_priorities(J)
    p_vacant = draw_priorities(I)
    assigned = tuple(
        AssignedJob(f"a{j + 1}", f"w{j + 1}", float(p)) for j, p in enumerate(p_assigned)
    )
    vacants = tuple(VacantJob(f"v{i + 1}", float(p)) for i, p in enumerate(p_vacant))

    jobs = [a.job for a in assigned] + [v.job for v in vacants]
    draws = rng.integers(1, params.affinity_count_max + 1, size=(len(jobs), J))
    counts = {
        (job, a.agent): int(draws[k, j])
        for k, job in enumerate(jobs)
        for j, a in enumerate(assigned)
    }
    return JrpInstance(
        assigned=assigned,
        vacants=vacants,
        affinities=AffinityTable(counts),
        weight_priority=params.c_priority,
        weight_affinity=params.c_affinity,
        priority_mode=params.mode,
    )
