"""Variable pruning and priority-band segmentation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ParameterError
from .model import (
    AssignedJob,
    JrpInstance,
    PriorityMode,
    VacantJob,
    distinct_priorities,
    priority_gain,
    score,
)
from .qubo import Pair


@dataclass(frozen=True)
class CandidateSet:
    """Pairs surviving both filters, plus how many each filter rejected.

    A pair failing the priority-gain filter is counted there even if its
    score is also non-positive; ``pruned_negative_score`` counts the rest.
    """

    pairs: tuple[Pair, ...]
    scores: tuple[float, ...] = ()
    pruned_negative_score: int = 0
    pruned_negative_gain: int = 0

    @property
    def total(self) -> int:
        return len(self.pairs) + self.pruned_negative_score + self.pruned_negative_gain

    def __len__(self):
        return len(self.pairs)


def enumerate_candidates(
    instance: JrpInstance,
    vacants: Sequence[VacantJob],
    agents: Sequence[AssignedJob],
) -> CandidateSet:
    """Keep pairs with ``S > 0`` and strictly positive priority gain.

    Pairs are listed vacant-major, in the order of the input sequences.
    """
    pairs, scores = [], []
    low_gain = low_score = 0
    for vacant in vacants:
        for agent_job in agents:
            if priority_gain(instance, vacant, agent_job) <= 0:
                low_gain += 1
                continue
            s = score(instance, vacant, agent_job)
            if s <= 0:
                low_score += 1
                continue
            pairs.append((vacant.job, agent_job.agent))
            scores.append(s)
    return CandidateSet(tuple(pairs), tuple(scores), low_score, low_gain)


@dataclass(frozen=True)
class PriorityBand:
    """One subproblem's slice of vacant jobs.

    ``p_min``/``p_max`` are the band's priority bounds. In continuous mode the
    band covers ``(p_min, p_max]``; in discrete mode both equal the band value.
    ``p_max`` may later be raised when jobs are rolled into the band.
    """

    index: int
    p_min: float
    p_max: float
    vacants: tuple[VacantJob, ...] = field(default=())

    @property
    def running_max(self) -> float | None:
        """Highest priority among the vacants currently in the band."""
        return max((v.priority for v in self.vacants), default=None)

    def contains(self, priority: float, mode: PriorityMode) -> bool:
        if mode is PriorityMode.DISCRETE:
            return priority == self.p_min
        return self.p_min < priority <= self.p_max


@dataclass(frozen=True)
class SubproblemPlan:
    bands: tuple[PriorityBand, ...]
    mode: PriorityMode

    @property
    def D(self) -> int:
        return len(self.bands)

    def band_for(self, priority: float) -> int | None:
        """1-based index of the band whose range holds ``priority``."""
        if self.mode is PriorityMode.DISCRETE:
            for band in self.bands:
                if band.p_min == priority:
                    return band.index
            return None
        return continuous_band(priority, self.D)


def continuous_band(priority: float, D: int) -> int:
    """Smallest d with ``priority > 1 - d/D``, i.e. band ``(1-d/D, 1-(d-1)/D]``."""
    for d in range(1, D + 1):
        if priority > 1.0 - d / D:
            return d
    return D


def build_plan(instance: JrpInstance, D: int | None = None) -> SubproblemPlan:
    """Group the instance's vacant jobs into bands ordered by falling priority.

    Discrete mode makes one band per distinct vacant priority and ``D`` must
    match that count when given. Continuous mode needs ``D`` and splits
    ``(0, 1]`` into ``D`` equal half-open intervals; empty bands are kept.
    """
    mode = instance.priority_mode
    if mode is PriorityMode.DISCRETE:
        levels = distinct_priorities(instance.vacants)
        if D is None:
            D = len(levels)
        elif D != len(levels):
            raise ParameterError(
                f"discrete mode needs one band per distinct vacant priority "
                f"({len(levels)}), got D={D}"
            )
        bands = tuple(
            PriorityBand(d, p, p, tuple(v for v in instance.vacants if v.priority == p))
            for d, p in enumerate(levels, start=1)
        )
        return SubproblemPlan(bands, mode)

    if D is None or D < 1:
        raise ParameterError(f"continuous mode needs D >= 1, got {D}")
    members: list[list[VacantJob]] = [[] for _ in range(D)]
    for v in instance.vacants:
        members[continuous_band(v.priority, D) - 1].append(v)
    bands = tuple(
        PriorityBand(d, 1.0 - d / D, 1.0 - (d - 1) / D, tuple(members[d - 1]))
        for d in range(1, D + 1)
    )
    return SubproblemPlan(bands, mode)


def eligible_agents(instance: JrpInstance, band: PriorityBand) -> list[AssignedJob]:
    """Agents whose current job ranks strictly below the band's top vacancy."""
    top = band.running_max
    if top is None:
        return []
    return [a for a in instance.assigned if a.priority < top]
