"""Minimisers for generic QUBO problems.

``solve_exact`` enumerates every bitstring and doubles as the reference
oracle for small problems. ``solve_anneal`` is a single-bit-flip Metropolis
annealer with a geometric temperature schedule and incremental energy
updates. Neither looks at the variable map.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import CapacityError, ParameterError
from .qubo import QuboProblem, Solution, decode, energy

_CHUNK_BITS = 16


class SolverKind(enum.Enum):
    EXACT = "exact"
    ANNEAL = "anneal"


@dataclass(frozen=True)
class SolverConfig:
    kind: SolverKind = SolverKind.ANNEAL
    max_exact_vars: int = 24
    sweeps: int = 1000
    restarts: int = 10
    temp_initial: float | None = None  # None: largest coefficient magnitude
    temp_final: float = 1e-3
    seed: int = 0
    check_energy: bool = False

    def __post_init__(self):
        if not isinstance(self.kind, SolverKind):
            object.__setattr__(self, "kind", SolverKind(self.kind))
        if self.sweeps < 1:
            raise ParameterError(f"sweeps must be >= 1, got {self.sweeps}")
        if self.restarts < 1:
            raise ParameterError(f"restarts must be >= 1, got {self.restarts}")
        if not self.temp_final > 0:
            raise ParameterError(f"temp_final must be positive, got {self.temp_final}")
        if self.temp_initial is not None and not self.temp_initial > self.temp_final:
            raise ParameterError(
                f"temp_initial ({self.temp_initial}) must exceed temp_final ({self.temp_final})"
            )
        if not 0 <= self.seed < 2**64:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def with_seed(self, seed: int) -> SolverConfig:
        return replace(self, seed=seed)


@dataclass(frozen=True)
class SolveResult:
    best: Solution
    energy_trace: list[float] | None = field(default=None)
    evaluations: int = 0


def solve_exact(problem: QuboProblem, max_vars: int = 24) -> SolveResult:
    """Global minimiser by enumeration.

    Ties are broken towards the lexicographically smallest bitstring, with
    bit 0 as the most significant position.
    """
    n = problem.n
    if n > max_vars:
        raise CapacityError(f"exact search limited to {max_vars} variables, problem has {n}")
    if n == 0:
        return SolveResult(best=decode(problem, np.zeros(0, dtype=np.int8)), evaluations=1)

    lin = problem.linear
    upper = problem.to_matrix() - np.diag(lin)
    tol = 1e-9 * max(1.0, problem.max_abs_coefficient())
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    total = 1 << n
    chunk = 1 << min(n, _CHUNK_BITS)

    best_index, best_value = -1, math.inf
    for start in range(0, total, chunk):
        index = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = ((index[:, None] >> shifts) & 1).astype(np.float64)
        values = bits @ lin + np.einsum("ka,ka->k", bits @ upper, bits)
        low = values.min()
        if low < best_value - tol:
            best_value = low
            best_index = int(index[np.flatnonzero(values <= low + tol)[0]])

    bits = ((best_index >> shifts) & 1).astype(np.int8)
    return SolveResult(best=decode(problem, bits), evaluations=total)


def _neighbours(problem: QuboProblem) -> list[list[tuple[int, float]]]:
    adjacency: list[list[tuple[int, float]]] = [[] for _ in range(problem.n)]
    for (a, b), value in problem.quadratic.items():
        if value != 0.0:
            adjacency[a].append((b, value))
            adjacency[b].append((a, value))
    return adjacency


def _anneal_once(problem, adjacency, temperatures, rng, check_energy):
    n = problem.n
    lin = problem.linear.tolist()
    x = rng.integers(0, 2, size=n).tolist()
    local = [0.0] * n
    for a in range(n):
        if x[a]:
            for b, w in adjacency[a]:
                local[b] += w
    current = energy(problem, x)
    best, best_x = current, list(x)
    exp = math.exp

    for temp in temperatures:
        draws = rng.random(n).tolist()
        for a in range(n):
            gain = lin[a] + local[a]
            delta = -gain if x[a] else gain
            if delta <= 0.0 or draws[a] < exp(-delta / temp):
                step = -1 if x[a] else 1
                x[a] ^= 1
                current += delta
                for b, w in adjacency[a]:
                    local[b] += step * w
                if current < best:
                    best, best_x = current, list(x)
        if check_energy:
            fresh = energy(problem, x)
            assert abs(current - fresh) <= 1e-9 * max(1.0, abs(fresh)), (current, fresh)
    return best_x


def schedule(config: SolverConfig, problem: QuboProblem) -> np.ndarray:
    """Geometric temperatures from the initial to the final value."""
    start = config.temp_initial
    if start is None:
        start = problem.max_abs_coefficient()
        if not start > config.temp_final:
            start = max(1.0, 10 * config.temp_final)
    if config.sweeps == 1:
        return np.array([config.temp_final])
    return np.geomspace(start, config.temp_final, config.sweeps)


def restart_rng(seed: int, restart: int) -> np.random.Generator:
    """Independent stream per restart, so restart order never matters."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(restart,)))


def solve_anneal(problem: QuboProblem, config: SolverConfig | None = None) -> SolveResult:
    config = config or SolverConfig()
    if problem.n < 1:
        raise ParameterError("annealing needs at least one variable")
    adjacency = _neighbours(problem)
    temperatures = schedule(config, problem).tolist()

    best: Solution | None = None
    trace = []
    for r in range(config.restarts):
        bits = _anneal_once(problem, adjacency, temperatures, restart_rng(config.seed, r), config.check_energy)
        candidate = decode(problem, bits)
        trace.append(candidate.energy)
        if best is None or candidate.energy < best.energy:
            best = candidate
    evaluations = config.restarts * config.sweeps * problem.n
    return SolveResult(best=best, energy_trace=trace, evaluations=evaluations)


def solve(problem: QuboProblem, config: SolverConfig | None = None) -> SolveResult:
    """Dispatch on ``config.kind``; an empty problem is trivially solved."""
    config = config or SolverConfig()
    if config.kind is SolverKind.EXACT:
        return solve_exact(problem, config.max_exact_vars)
    if problem.n == 0:
        return solve_exact(problem, 0)
    return solve_anneal(problem, config)
