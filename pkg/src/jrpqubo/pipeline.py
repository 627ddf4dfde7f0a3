"""Band-by-band reassignment.

Bands are solved from the highest priority down. After each band the moved
agents take their new jobs, the jobs they left become vacancies for a later
band, and (by default) vacancies that stayed unfilled are carried into the
next band.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import FeasibilityError, InvariantViolation
from .heuristics import (
    PriorityBand,
    SubproblemPlan,
    build_plan,
    eligible_agents,
    enumerate_candidates,
)
from .model import (
    AffinityTable,
    AgentId,
    AssignedJob,
    JobId,
    JrpInstance,
    PriorityMode,
    VacantJob,
    priority_gain,
    score,
)
from .qubo import Pair, build_qubo
from .solvers import SolverConfig, solve

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Move:
    band: int
    vacant: JobId
    agent: AgentId
    vacated: JobId
    score: float
    gain: float


@dataclass(frozen=True)
class WorldState:
    """Everything that changes while the bands are worked through.

    ``assigned`` keeps one slot per agent in the original order; a move only
    swaps the job in that slot, so its length never changes.
    """

    base: JrpInstance
    assigned: tuple[AssignedJob, ...]
    bands: tuple[PriorityBand, ...]
    affinities: AffinityTable
    current: int = 1
    history: tuple[Move, ...] = ()
    dropped: tuple[VacantJob, ...] = ()

    @classmethod
    def initial(cls, instance: JrpInstance, plan: SubproblemPlan) -> WorldState:
        return cls(instance, instance.assigned, plan.bands, instance.affinities)

    @property
    def mode(self) -> PriorityMode:
        return self.base.priority_mode

    @property
    def band(self) -> PriorityBand:
        return self.bands[self.current - 1]

    def band_instance(self) -> JrpInstance:
        """The current band viewed as a stand-alone instance."""
        return self.base.replace(
            assigned=self.assigned, vacants=self.band.vacants, affinities=self.affinities
        )

    def open_vacants(self) -> list[VacantJob]:
        return [v for band in self.bands for v in band.vacants] + list(self.dropped)


def _target_band(state: WorldState, priority: float) -> int | None:
    """Later band that should receive a job of this priority, if any."""
    D = len(state.bands)
    if state.mode is PriorityMode.DISCRETE:
        for band in state.bands[state.current:]:
            if band.p_min == priority:
                return band.index
        return None
    for band in state.bands[state.current:]:
        if band.contains(priority, state.mode):
            return band.index
    # at or above the current band's range: next band, if there is one
    return state.current + 1 if state.current < D else None


def _insert(bands: list[PriorityBand], index: int, jobs: Sequence[VacantJob]) -> None:
    band = bands[index - 1]
    top = max([band.p_max, *(v.priority for v in jobs)])
    bands[index - 1] = replace(band, p_max=top, vacants=band.vacants + tuple(jobs))


def apply_moves(state: WorldState, moves: Sequence[Pair]) -> WorldState:
    """Move agents onto vacancies of the current band.

    Moves are treated as simultaneous: scores are taken from the state before
    any of them is applied, and the result does not depend on their order.
    """
    if not moves:
        return state
    band = state.band
    position = {v.job: k for k, v in enumerate(band.vacants)}
    slot = {a.agent: k for k, a in enumerate(state.assigned)}
    seen_vacant: set[JobId] = set()
    seen_agent: set[AgentId] = set()
    for vacant, agent in moves:
        if vacant in seen_vacant:
            raise FeasibilityError(f"vacant job {vacant!r} filled twice")
        if agent in seen_agent:
            raise FeasibilityError(f"agent {agent!r} moved twice")
        if vacant not in position:
            raise FeasibilityError(f"{vacant!r} is not a vacancy of band {band.index}")
        if agent not in slot:
            raise FeasibilityError(f"unknown agent {agent!r}")
        seen_vacant.add(vacant)
        seen_agent.add(agent)

    ordered = sorted(moves, key=lambda m: position[m[0]])
    view = state.band_instance()
    assigned = list(state.assigned)
    affinities = state.affinities
    applied = []
    vacated = []
    for vacant_id, agent_id in ordered:
        vacant = band.vacants[position[vacant_id]]
        old = state.assigned[slot[agent_id]]
        applied.append(
            Move(band.index, vacant_id, agent_id, old.job,
                 score(view, vacant, old), priority_gain(view, vacant, old))
        )
        assigned[slot[agent_id]] = AssignedJob(vacant_id, agent_id, vacant.priority)
        affinities = affinities.with_assignment(vacant_id, agent_id)
        vacated.append(VacantJob(old.job, old.priority))

    bands = list(state.bands)
    bands[band.index - 1] = replace(
        band, vacants=tuple(v for v in band.vacants if v.job not in seen_vacant)
    )
    dropped = list(state.dropped)
    for job in vacated:
        target = _target_band(state, job.priority)
        if target is None:
            dropped.append(job)
        else:
            _insert(bands, target, [job])
    return replace(
        state,
        assigned=tuple(assigned),
        bands=tuple(bands),
        affinities=affinities,
        history=state.history + tuple(applied),
        dropped=tuple(dropped),
    )


def advance(state: WorldState, carry_unfilled: bool = True) -> WorldState:
    """Close the current band, optionally carrying its leftovers forward."""
    nxt = state.current + 1
    if nxt > len(state.bands):
        return replace(state, current=nxt)
    bands = list(state.bands)
    leftover = state.band.vacants
    if carry_unfilled and leftover:
        bands[state.current - 1] = replace(state.band, vacants=())
        _insert(bands, nxt, leftover)
    return replace(state, bands=tuple(bands), current=nxt)


def repair(moves: Sequence[Pair], scores: dict[Pair, float]) -> tuple[list[Pair], bool]:
    """Greedy clean-up of a solver answer with clashing rows or columns.

    Moves are kept best-score first; any move whose vacancy or agent is
    already taken is dropped.
    """
    kept: list[Pair] = []
    used_v: set[JobId] = set()
    used_a: set[AgentId] = set()
    for move in sorted(moves, key=lambda m: -scores[m]):
        vacant, agent = move
        if vacant in used_v or agent in used_a:
            continue
        used_v.add(vacant)
        used_a.add(agent)
        kept.append(move)
    kept.sort(key=lambda m: moves.index(m))
    return kept, len(kept) != len(moves)


@dataclass(frozen=True)
class BandRecord:
    index: int
    vacants_considered: int
    agents_considered: int
    variables: int
    pruned_negative_score: int
    pruned_negative_gain: int
    penalty: float | None
    energy: float
    moves: tuple[Move, ...]
    repaired: bool
    seconds: float
    assigned_after: int

    @property
    def grid(self) -> tuple[int, int]:
        """(agents, vacants) before score pruning."""
        return self.agents_considered, self.vacants_considered

    @property
    def vacants_filled(self) -> int:
        return len(self.moves)


@dataclass(frozen=True)
class PipelineReport:
    per_band: tuple[BandRecord, ...]
    final_assigned: tuple[tuple[JobId, AgentId], ...]
    final_vacant: tuple[JobId, ...]
    dropped: tuple[JobId, ...]
    history: tuple[Move, ...] = field(default=())

    @property
    def total_variables(self) -> int:
        return sum(b.variables for b in self.per_band)

    @property
    def largest_subproblem(self) -> int:
        return max((b.variables for b in self.per_band), default=0)

    @property
    def total_score(self) -> float:
        return sum(m.score for m in self.history)

    @property
    def alpha_estimate(self) -> float:
        """Mean fraction of considered vacancies that a band filled."""
        ratios = [b.vacants_filled / b.vacants_considered for b in self.per_band if b.vacants_considered]
        return sum(ratios) / len(ratios) if ratios else 0.0

    @property
    def moves(self) -> list[Pair]:
        return [(m.vacant, m.agent) for m in self.history]

    def to_dict(self) -> dict:
        return {
            "final_assigned": [{"job": j, "agent": a} for j, a in self.final_assigned],
            "final_vacant": list(self.final_vacant),
            "dropped_vacancies": list(self.dropped),
            "alpha_estimate": self.alpha_estimate,
            "total_variables": self.total_variables,
            "largest_subproblem": self.largest_subproblem,
            "total_score": self.total_score,
            "bands": [
                {
                    "band": b.index,
                    "vacants_considered": b.vacants_considered,
                    "agents_considered": b.agents_considered,
                    "variables": b.variables,
                    "pruned_negative_score": b.pruned_negative_score,
                    "pruned_negative_gain": b.pruned_negative_gain,
                    "penalty": b.penalty,
                    "energy": b.energy,
                    "vacants_filled": b.vacants_filled,
                    "repaired": b.repaired,
                    "seconds": b.seconds,
                    "assigned_after": b.assigned_after,
                    "moves": [
                        {"vacant": m.vacant, "agent": m.agent, "vacated": m.vacated,
                         "score": m.score, "priority_gain": m.gain}
                        for m in b.moves
                    ],
                }
                for b in self.per_band
            ],
        }


def single_band_plan(instance: JrpInstance) -> SubproblemPlan:
    """All vacancies in one band with nowhere to roll vacated jobs."""
    top = max((v.priority for v in instance.vacants), default=0.0)
    return SubproblemPlan((PriorityBand(1, 0.0, top, instance.vacants),), instance.priority_mode)


def _check(state: WorldState, J: int) -> None:
    if len(state.assigned) != J:
        raise InvariantViolation(f"band {state.current}: {len(state.assigned)} assigned jobs, expected {J}")
    jobs = [a.job for a in state.assigned]
    if len(set(jobs)) != J:
        raise InvariantViolation(f"band {state.current}: a job is covered twice")
    open_jobs = {v.job for v in state.open_vacants()}
    if open_jobs & set(jobs):
        raise InvariantViolation(f"band {state.current}: a job is both assigned and vacant")
    for m in state.history:
        if not (m.score > 0 and m.gain > 0):
            raise InvariantViolation(f"applied move {m} has non-positive score or gain")


def run(
    instance: JrpInstance,
    D: int | None = None,
    solver: SolverConfig | None = None,
    *,
    carry_unfilled: bool = True,
    lambda1: float | None = None,
    lambda2: float | None = None,
    plan: SubproblemPlan | None = None,
) -> PipelineReport:
    """Solve the bands in order and return what happened in each.

    Band ``d`` uses ``solver.seed + d - 1`` so that a one-band run matches a
    direct solve with the same seed.
    """
    solver = solver or SolverConfig()
    plan = plan or build_plan(instance, D)
    state = WorldState.initial(instance, plan)
    J = instance.num_assigned
    records = []

    for _ in plan.bands:
        started = time.perf_counter()
        band = state.band
        view = state.band_instance()
        agents = eligible_agents(view, band)
        candidates = enumerate_candidates(view, band.vacants, agents)
        problem = build_qubo(view, candidates.pairs, lambda1, lambda2)
        config = solver.with_seed((solver.seed + band.index - 1) % 2**64)
        result = solve(problem, config)
        scores = dict(zip(candidates.pairs, candidates.scores))
        moves, repaired = repair(list(result.best.moves), scores)
        if repaired:
            log.warning("band %d: solver answer was infeasible, kept %d moves", band.index, len(moves))

        state = apply_moves(state, moves)
        applied = tuple(m for m in state.history if m.band == band.index)
        records.append(
            BandRecord(
                index=band.index,
                vacants_considered=len(band.vacants),
                agents_considered=len(agents),
                variables=problem.n,
                pruned_negative_score=candidates.pruned_negative_score,
                pruned_negative_gain=candidates.pruned_negative_gain,
                penalty=problem.lambda1 if problem.n else None,
                energy=result.best.energy,
                moves=applied,
                repaired=repaired,
                seconds=time.perf_counter() - started,
                assigned_after=len(state.assigned),
            )
        )
        _check(state, J)
        state = advance(state, carry_unfilled)

    return PipelineReport(
        per_band=tuple(records),
        final_assigned=tuple((a.job, a.agent) for a in state.assigned),
        final_vacant=tuple(v.job for v in state.open_vacants()),
        dropped=tuple(v.job for v in state.dropped),
        history=state.history,
    )


def run_full(instance: JrpInstance, solver: SolverConfig | None = None, **kwargs) -> PipelineReport:
    """One band over every vacancy, without segmentation or rollover."""
    return run(instance, solver=solver, plan=single_band_plan(instance), **kwargs)
