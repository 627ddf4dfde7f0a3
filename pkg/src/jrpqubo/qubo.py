"""QUBO hamiltonian for a set of candidate (vacant job, agent) moves.

Each candidate pair gets one binary variable. The energy is

    H(x) = -sum S_ij x_ij
           + lambda1 * sum_i (sum_j x_ij - 0.5)^2
           + lambda2 * sum_j (sum_i x_ij - 0.5)^2

with the sums restricted to the candidate pairs. The 0.5 offset makes 0 and
1 the two cheapest row/column occupancies, so no slack variables are needed.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError
from .model import AgentId, JobId, JrpInstance, score

Pair = tuple[JobId, AgentId]


@dataclass(frozen=True)
class VariableMap:
    """Dense index <-> (vacant job, agent) mapping."""

    pairs: tuple[Pair, ...]
    index: dict[Pair, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pairs = tuple((str(v), str(a)) for v, a in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        index: dict[Pair, int] = {}
        for k, pair in enumerate(pairs):
            if pair in index:
                raise ParameterError(f"duplicate variable {pair}")
            index[pair] = k
        object.__setattr__(self, "index", index)

    def __len__(self):
        return len(self.pairs)

    def __getitem__(self, k: int) -> Pair:
        return self.pairs[k]

    def rows(self) -> dict[JobId, list[int]]:
        """Variable indices grouped by vacant job, in first-seen order."""
        groups: dict[JobId, list[int]] = defaultdict(list)
        for k, (vacant, _) in enumerate(self.pairs):
            groups[vacant].append(k)
        return dict(groups)

    def columns(self) -> dict[AgentId, list[int]]:
        groups: dict[AgentId, list[int]] = defaultdict(list)
        for k, (_, agent) in enumerate(self.pairs):
            groups[agent].append(k)
        return dict(groups)


@dataclass(frozen=True)
class QuboProblem:
    """``offset + sum linear[a] x_a + sum_{a<b} quadratic[a, b] x_a x_b``."""

    linear: np.ndarray
    quadratic: dict[tuple[int, int], float]
    offset: float = 0.0
    varmap: VariableMap | None = None
    lambda1: float | None = None
    lambda2: float | None = None

    def __post_init__(self):
        linear = np.asarray(self.linear, dtype=np.float64).reshape(-1)
        linear.setflags(write=False)
        object.__setattr__(self, "linear", linear)
        n = linear.shape[0]
        for a, b in self.quadratic:
            if not (0 <= a < b < n):
                raise ParameterError(f"quadratic key {(a, b)} is not strictly upper-triangular in [0, {n})")
        if self.varmap is not None and len(self.varmap) != n:
            raise ParameterError(f"variable map has {len(self.varmap)} entries for {n} variables")

    @property
    def n(self) -> int:
        return self.linear.shape[0]

    def to_matrix(self) -> np.ndarray:
        """Dense upper-triangular matrix Q with ``x @ Q @ x + offset == H(x)``."""
        q = np.diag(self.linear).astype(np.float64)
        for (a, b), value in self.quadratic.items():
            q[a, b] += value
        return q

    def max_abs_coefficient(self) -> float:
        values = [abs(v) for v in self.quadratic.values()]
        if self.n:
            values.append(float(np.max(np.abs(self.linear))))
        return max(values, default=0.0)


@dataclass(frozen=True)
class IsingProblem:
    """``offset + sum h[a] s_a + sum_{a<b} J[a, b] s_a s_b`` over spins s = +-1."""

    h: np.ndarray
    J: dict[tuple[int, int], float]
    offset: float = 0.0

    @property
    def n(self) -> int:
        return len(self.h)


@dataclass(frozen=True)
class Solution:
    bits: np.ndarray
    energy: float
    moves: tuple[Pair, ...]


def default_penalty(scores: Iterable[float]) -> float:
    """Penalty weight strictly above every achievable single-move gain."""
    return max(max(scores, default=0.0), 0.0) + 1.0


def pair_scores(instance: JrpInstance, variables: Sequence[Pair]) -> list[float]:
    return [score(instance, instance.vacant(v), instance.agent(a)) for v, a in variables]


def build_qubo(
    instance: JrpInstance,
    variables: Sequence[Pair],
    lambda1: float | None = None,
    lambda2: float | None = None,
) -> QuboProblem:
    """Assemble the hamiltonian over the given candidate pairs.

    Penalty rows and columns exist only for vacant jobs and agents that own at
    least one variable. Omitted lambdas default to ``max(S) + 1``.
    """
    varmap = VariableMap(tuple(variables))
    scores = pair_scores(instance, varmap.pairs)
    if lambda1 is None:
        lambda1 = default_penalty(scores)
    if lambda2 is None:
        lambda2 = default_penalty(scores)
    for name, lam in (("lambda1", lambda1), ("lambda2", lambda2)):
        if not lam > 0:
            raise ParameterError(f"{name} must be positive, got {lam!r}")

    linear = -np.asarray(scores, dtype=np.float64)
    quadratic: dict[tuple[int, int], float] = defaultdict(float)
    offset = 0.0
    # lam * (sum x - 0.5)^2 with x^2 = x: the linear parts cancel exactly,
    # leaving 2*lam per pair in the group and 0.25*lam in the constant.
    for lam, groups in ((lambda1, varmap.rows()), (lambda2, varmap.columns())):
        for members in groups.values():
            offset += 0.25 * lam
            for p, a in enumerate(members):
                for b in members[p + 1:]:
                    quadratic[(a, b) if a < b else (b, a)] += 2.0 * lam
    return QuboProblem(
        linear=linear,
        quadratic=dict(quadratic),
        offset=offset,
        varmap=varmap,
        lambda1=float(lambda1),
        lambda2=float(lambda2),
    )


def _as_bits(problem_n: int, bits) -> np.ndarray:
    arr = np.asarray(bits)
    if arr.shape != (problem_n,):
        raise ValueError(f"expected {problem_n} bits, got shape {arr.shape}")
    if not np.all((arr == 0) | (arr == 1)):
        raise ValueError("bits must be 0 or 1")
    return arr.astype(np.int8)


def energy(problem: QuboProblem, bits) -> float:
    x = _as_bits(problem.n, bits)
    total = problem.offset + float(problem.linear @ x)
    for (a, b), value in problem.quadratic.items():
        if x[a] and x[b]:
            total += value
    return total


def decode(problem: QuboProblem, bits) -> Solution:
    """Map set bits back to moves. Feasibility is not enforced here."""
    x = _as_bits(problem.n, bits)
    if problem.varmap is None:
        moves: tuple[Pair, ...] = ()
    else:
        moves = tuple(problem.varmap[k] for k in np.flatnonzero(x))
    return Solution(bits=x, energy=energy(problem, x), moves=moves)


def to_ising(problem: QuboProblem) -> IsingProblem:
    """Substitute ``x = (1 - s) / 2`` so that bit 0 maps to spin +1."""
    h = -0.5 * problem.linear.astype(np.float64)
    offset = problem.offset + 0.5 * float(np.sum(problem.linear))
    couplings: dict[tuple[int, int], float] = {}
    for (a, b), q in problem.quadratic.items():
        couplings[(a, b)] = 0.25 * q
        h[a] -= 0.25 * q
        h[b] -= 0.25 * q
        offset += 0.25 * q
    return IsingProblem(h=h, J=couplings, offset=offset)


def ising_energy(problem: IsingProblem, spins) -> float:
    s = np.asarray(spins, dtype=np.float64)
    if s.shape != (problem.n,):
        raise ValueError(f"expected {problem.n} spins, got shape {s.shape}")
    total = problem.offset + float(problem.h @ s)
    for (a, b), value in problem.J.items():
        total += value * s[a] * s[b]
    return total


def write_coefficients(problem: QuboProblem, stream) -> None:
    """Write the plain coefficient format: ``N offset`` then ``i j value`` lines."""
    stream.write(f"{problem.n} {problem.offset!r}\n")
    for a, value in enumerate(problem.linear):
        if value != 0.0:
            stream.write(f"{a} {a} {float(value)!r}\n")
    for (a, b), value in sorted(problem.quadratic.items()):
        stream.write(f"{a} {b} {float(value)!r}\n")


def read_coefficients(stream) -> QuboProblem:
    lines = [line.split() for line in stream if line.strip() and not line.lstrip().startswith("#")]
    if not lines or len(lines[0]) != 2:
        raise ValueError("coefficient file must start with an 'N offset' header")
    n, offset = int(lines[0][0]), float(lines[0][1])
    linear = np.zeros(n)
    quadratic: dict[tuple[int, int], float] = {}
    for lineno, fields in enumerate(lines[1:], start=2):
        if len(fields) != 3:
            raise ValueError(f"entry {lineno}: expected 'i j value', got {' '.join(fields)!r}")
        a, b, value = int(fields[0]), int(fields[1]), float(fields[2])
        if a == b:
            linear[a] += value
        elif a < b:
            quadratic[(a, b)] = quadratic.get((a, b), 0.0) + value
        else:
            raise ValueError(f"entry {lineno}: expected i <= j, got {a} > {b}")
    return QuboProblem(linear=linear, quadratic=quadratic, offset=offset)
