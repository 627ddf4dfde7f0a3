import numpy as np
import pytest

from jrpqubo.errors import CapacityError, ParameterError
from jrpqubo.model import AffinityTable, AssignedJob, JrpInstance, VacantJob
from jrpqubo.qubo import QuboProblem, build_qubo, energy
from jrpqubo.solvers import SolverConfig, SolverKind, solve, solve_anneal, solve_exact

from oracles import brute_force_minimum, random_instance


def random_qubo(rng, n, density=0.5):
    quad = {(a, b): float(rng.normal()) for a in range(n) for b in range(a + 1, n) if rng.random() < density}
    return QuboProblem(linear=rng.normal(size=n), quadratic=quad, offset=float(rng.normal()))


def test_exact_empty_problem():
    result = solve_exact(QuboProblem(linear=np.zeros(0), quadratic={}, offset=2.5))
    assert result.best.bits.shape == (0,)
    assert result.best.energy == 2.5


def test_exact_single_variable():
    result = solve_exact(QuboProblem(linear=[-1.0], quadratic={}, offset=0.0))
    assert result.best.bits.tolist() == [1]
    assert result.best.energy == -1.0


def test_exact_single_jrp_variable():
    inst = JrpInstance(
        assigned=(AssignedJob("c", "ag", 0.5),),
        vacants=(VacantJob("v", 1.0),),
        affinities=AffinityTable({("c", "ag"): 1, ("v", "ag"): 1}),
        weight_priority=2.0,
    )
    result = solve_exact(build_qubo(inst, [("v", "ag")], 1.0, 1.0))
    assert result.best.bits.tolist() == [1]
    assert result.best.energy == pytest.approx(-0.5)


def test_exact_matches_enumeration_oracle():
    rng = np.random.default_rng(12)
    for n in range(1, 11):
        problem = random_qubo(rng, n)
        best, states = brute_force_minimum(problem)
        result = solve_exact(problem)
        assert result.best.energy == pytest.approx(best, abs=1e-9)
        assert tuple(result.best.bits.tolist()) == min(states)
        assert result.evaluations == 2**n


def test_exact_tie_break_is_lexicographic():
    result = solve_exact(QuboProblem(linear=np.zeros(4), quadratic={}, offset=0.0))
    assert result.best.bits.tolist() == [0, 0, 0, 0]
    # two degenerate minima: 01 and 10
    problem = QuboProblem(linear=[-1.0, -1.0], quadratic={(0, 1): 5.0})
    assert solve_exact(problem).best.bits.tolist() == [0, 1]


def test_exact_capacity():
    problem = QuboProblem(linear=np.zeros(25), quadratic={})
    with pytest.raises(CapacityError):
        solve_exact(problem)
    with pytest.raises(CapacityError):
        solve(QuboProblem(linear=np.zeros(5), quadratic={}), SolverConfig(kind="exact", max_exact_vars=4))


def test_exact_spans_several_chunks():
    rng = np.random.default_rng(0)
    problem = random_qubo(rng, 18, density=0.2)
    result = solve_exact(problem)
    assert result.best.energy == pytest.approx(energy(problem, result.best.bits))
    # no single flip improves a global minimum
    for a in range(problem.n):
        flipped = result.best.bits.copy()
        flipped[a] ^= 1
        assert energy(problem, flipped) >= result.best.energy - 1e-9


def test_anneal_zero_problem():
    result = solve_anneal(QuboProblem(linear=np.zeros(3), quadratic={}, offset=1.25), SolverConfig(sweeps=10))
    assert result.best.energy == 1.25


def test_anneal_is_deterministic():
    rng = np.random.default_rng(3)
    problem = random_qubo(rng, 12)
    config = SolverConfig(seed=42, sweeps=200, restarts=3)
    first, second = solve_anneal(problem, config), solve_anneal(problem, config)
    assert first.best.bits.tolist() == second.best.bits.tolist()
    assert first.energy_trace == second.energy_trace
    assert first.evaluations == second.evaluations


def test_anneal_energy_recomputed_and_traced():
    rng = np.random.default_rng(5)
    problem = random_qubo(rng, 14)
    result = solve_anneal(problem, SolverConfig(sweeps=300, check_energy=True))
    assert result.best.energy == pytest.approx(energy(problem, result.best.bits), abs=1e-9)
    assert all(result.best.energy <= e for e in result.energy_trace)
    assert len(result.energy_trace) == 10


def test_anneal_matches_exact_on_jrp_problems():
    rng = np.random.default_rng(77)
    hits = 0
    total = 0
    while total < 50:
        J, I = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        inst = random_instance(rng, J, I)
        pairs = [(v.job, a.agent) for v in inst.vacants for a in inst.assigned]
        problem = build_qubo(inst, pairs)
        exact = solve_exact(problem).best.energy
        got = solve_anneal(problem, SolverConfig(seed=total)).best.energy
        assert got >= exact - 1e-9
        hits += abs(got - exact) <= 1e-9
        total += 1
    assert hits >= 48


def test_restart_streams_independent_of_count():
    rng = np.random.default_rng(8)
    problem = random_qubo(rng, 8)
    few = solve_anneal(problem, SolverConfig(sweeps=50, restarts=2, seed=3))
    many = solve_anneal(problem, SolverConfig(sweeps=50, restarts=5, seed=3))
    assert many.energy_trace[:2] == few.energy_trace


@pytest.mark.parametrize(
    "kwargs",
    [dict(sweeps=0), dict(restarts=0), dict(temp_final=0.0), dict(temp_initial=1e-4, temp_final=1e-3),
     dict(seed=-1)],
)
def test_bad_config(kwargs):
    with pytest.raises(ParameterError):
        SolverConfig(**kwargs)


def test_dispatch():
    problem = QuboProblem(linear=[-1.0, 2.0], quadratic={})
    assert solve(problem, SolverConfig(kind=SolverKind.EXACT)).best.bits.tolist() == [1, 0]
    assert solve(problem, SolverConfig(sweeps=50)).best.bits.tolist() == [1, 0]
    empty = QuboProblem(linear=np.zeros(0), quadratic={}, offset=0.25)
    assert solve(empty).best.energy == 0.25
