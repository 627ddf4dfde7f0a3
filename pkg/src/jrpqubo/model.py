"""Domain types for the job reassignment problem.

An instance holds ``J`` jobs that currently have an agent, ``I`` vacant
jobs, a table of historical assignment counts and the two weights that
combine priority gain and affinity gain into a move score.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvalidInstance

JobId = str
AgentId = str


class PriorityMode(enum.Enum):
    DISCRETE = "discrete"
    CONTINUOUS = "continuous"


@dataclass(frozen=True)
class AssignedJob:
    job: JobId
    agent: AgentId
    priority: float


@dataclass(frozen=True)
class VacantJob:
    job: JobId
    priority: float


def count_to_affinity(count: int) -> float:
    """Map a historical assignment count onto ``[0, 1)``: ``1 - 1/(1+M)``."""
    return 1.0 - 1.0 / (1.0 + count)


@dataclass(frozen=True)
class AffinityTable:
    """Historical counts ``M[job, agent]``; unobserved pairs count as zero."""

    counts: Mapping[tuple[JobId, AgentId], int] = field(default_factory=dict)

    def __post_init__(self):
        for key, value in self.counts.items():
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise InvalidInstance(
                    f"affinity count for {key} must be a non-negative integer, got {value!r}"
                )
        object.__setattr__(self, "counts", dict(self.counts))

    def count(self, job: JobId, agent: AgentId) -> int:
        return self.counts.get((job, agent), 0)

    def affinity(self, job: JobId, agent: AgentId) -> float:
        return count_to_affinity(self.count(job, agent))

    def with_assignment(self, job: JobId, agent: AgentId) -> AffinityTable:
        """Return a copy in which ``agent`` has covered ``job`` once more."""
        counts = dict(self.counts)
        counts[(job, agent)] = counts.get((job, agent), 0) + 1
        return AffinityTable(counts)

    def items(self):
        return self.counts.items()


def affinity(counts: AffinityTable, job: JobId, agent: AgentId) -> float:
    return counts.affinity(job, agent)


@dataclass(frozen=True)
class JrpInstance:
    """A validated, immutable problem instance.

    Validation runs eagerly in ``__post_init__`` so that downstream code can
    assume well-formed data. Priorities are stored as floats in both modes;
    the mode only changes how vacant jobs are grouped into bands.
    """

    assigned: tuple[AssignedJob, ...]
    vacants: tuple[VacantJob, ...]
    affinities: AffinityTable = field(default_factory=AffinityTable)
    weight_priority: float = 1.0
    weight_affinity: float = 1.0
    priority_mode: PriorityMode = PriorityMode.CONTINUOUS

    def __post_init__(self):
        object.__setattr__(self, "assigned", tuple(self.assigned))
        object.__setattr__(self, "vacants", tuple(self.vacants))
        if not isinstance(self.affinities, AffinityTable):
            object.__setattr__(self, "affinities", AffinityTable(self.affinities))
        self._validate()
        object.__setattr__(self, "_by_agent", {a.agent: a for a in self.assigned})
        object.__setattr__(self, "_by_vacant", {v.job: v for v in self.vacants})
        priorities = {a.job: a.priority for a in self.assigned}
        priorities.update((v.job, v.priority) for v in self.vacants)
        object.__setattr__(self, "_priorities", priorities)

    def _validate(self):
        for name in ("weight_priority", "weight_affinity"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise InvalidInstance(f"{name} must be a positive finite number, got {value!r}")
        if not isinstance(self.priority_mode, PriorityMode):
            raise InvalidInstance(f"unknown priority mode {self.priority_mode!r}")

        seen_jobs: set[JobId] = set()
        seen_agents: set[AgentId] = set()
        for item in (*self.assigned, *self.vacants):
            if not isinstance(item.job, str) or not item.job:
                raise InvalidInstance(f"job id must be a non-empty string, got {item.job!r}")
            if item.job in seen_jobs:
                raise InvalidInstance(f"job {item.job!r} appears more than once")
            seen_jobs.add(item.job)
            self._check_priority(item.job, item.priority)
        for a in self.assigned:
            if not isinstance(a.agent, str) or not a.agent:
                raise InvalidInstance(f"agent id must be a non-empty string, got {a.agent!r}")
            if a.agent in seen_agents:
                raise InvalidInstance(f"agent {a.agent!r} covers more than one job")
            seen_agents.add(a.agent)
            if self.affinities.count(a.job, a.agent) < 1:
                raise InvalidInstance(
                    f"agent {a.agent!r} currently covers {a.job!r} but its assignment count is 0"
                )

    def _check_priority(self, job: JobId, priority: float):
        if isinstance(priority, bool) or not isinstance(priority, (int, float)):
            raise InvalidInstance(f"priority of {job!r} must be a number, got {priority!r}")
        if not math.isfinite(priority) or priority <= 0:
            raise InvalidInstance(f"priority of {job!r} must be positive, got {priority!r}")
        if self.priority_mode is PriorityMode.CONTINUOUS and priority > 1:
            raise InvalidInstance(
                f"priority of {job!r} is {priority!r}; continuous priorities must lie in (0, 1]"
            )

    @property
    def num_assigned(self) -> int:
        return len(self.assigned)

    @property
    def num_vacant(self) -> int:
        return len(self.vacants)

    def agent(self, agent: AgentId) -> AssignedJob:
        try:
            return self._by_agent[agent]
        except KeyError:
            raise KeyError(f"unknown agent {agent!r}") from None

    def vacant(self, job: JobId) -> VacantJob:
        try:
            return self._by_vacant[job]
        except KeyError:
            raise KeyError(f"unknown vacant job {job!r}") from None

    def priority_of(self, job: JobId) -> float:
        try:
            return self._priorities[job]
        except KeyError:
            raise KeyError(f"unknown job {job!r}") from None

    def replace(self, **changes) -> JrpInstance:
        """Return a new validated instance with some fields swapped out."""
        fields = {
            "assigned": self.assigned,
            "vacants": self.vacants,
            "affinities": self.affinities,
            "weight_priority": self.weight_priority,
            "weight_affinity": self.weight_affinity,
            "priority_mode": self.priority_mode,
        }
        fields.update(changes)
        return JrpInstance(**fields)


def priority_gain(instance: JrpInstance, vacant: VacantJob, agent_job: AssignedJob) -> float:
    """Priority of the vacant job minus the priority of the agent's current job."""
    return instance.priority_of(vacant.job) - instance.priority_of(agent_job.job)


def affinity_gain(instance: JrpInstance, vacant: VacantJob, agent_job: AssignedJob) -> float:
    table = instance.affinities
    return table.affinity(vacant.job, agent_job.agent) - table.affinity(agent_job.job, agent_job.agent)


def score(instance: JrpInstance, vacant: VacantJob, agent_job: AssignedJob) -> float:
    """Weighted gain of moving ``agent_job.agent`` onto ``vacant``."""
    return (
        instance.weight_priority * priority_gain(instance, vacant, agent_job)
        + instance.weight_affinity * affinity_gain(instance, vacant, agent_job)
    )


def distinct_priorities(vacants: Iterable[VacantJob]) -> list[float]:
    """Distinct vacant priorities, highest first."""
    return sorted({v.priority for v in vacants}, reverse=True)
