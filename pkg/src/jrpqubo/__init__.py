"""QUBO formulation and banded decomposition of the job reassignment problem."""

from .errors import (
    CapacityError,
    FeasibilityError,
    InstanceFileError,
    InvalidInstance,
    InvariantViolation,
    ParameterError,
)
from .heuristics import (
    CandidateSet,
    PriorityBand,
    SubproblemPlan,
    build_plan,
    eligible_agents,
    enumerate_candidates,
)
from .model import (
    AffinityTable,
    AssignedJob,
    JrpInstance,
    PriorityMode,
    VacantJob,
    affinity,
    priority_gain,
    score,
)
from .pipeline import PipelineReport, WorldState, apply_moves, run, run_full
from .qubo import IsingProblem, QuboProblem, Solution, build_qubo, decode, energy, to_ising
from .solvers import SolveResult, SolverConfig, SolverKind, solve, solve_anneal, solve_exact

__version__ = "0.1.0"
