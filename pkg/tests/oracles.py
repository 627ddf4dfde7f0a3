"""Reference computations that share no code path with the package.

Scores are recomputed from raw priorities and counts, the hamiltonian is
evaluated straight from its row/column-sum form, and minimisers come from
plain enumeration.
"""

from __future__ import annotations

import itertools

import numpy as np

from jrpqubo.model import AffinityTable, AssignedJob, JrpInstance, PriorityMode, VacantJob


def raw_score(instance, vacant_job, agent):
    """S_ij from first principles: priorities, counts, weights."""
    current = next(a for a in instance.assigned if a.agent == agent)
    p_v = next(v.priority for v in instance.vacants if v.job == vacant_job)
    counts = instance.affinities.counts
    m_v = counts.get((vacant_job, agent), 0)
    m_c = counts.get((current.job, agent), 0)
    a_v = m_v / (1.0 + m_v)
    a_c = m_c / (1.0 + m_c)
    return instance.weight_priority * (p_v - current.priority) + instance.weight_affinity * (a_v - a_c)


def direct_energy(instance, pairs, bits, lambda1, lambda2):
    """Hamiltonian evaluated as -sum S x + row and column penalties."""
    total = 0.0
    rows: dict = {}
    cols: dict = {}
    for (vacant, agent), x in zip(pairs, bits):
        total -= raw_score(instance, vacant, agent) * x
        rows[vacant] = rows.get(vacant, 0) + x
        cols[agent] = cols.get(agent, 0) + x
    total += lambda1 * sum((s - 0.5) ** 2 for s in rows.values())
    total += lambda2 * sum((s - 0.5) ** 2 for s in cols.values())
    return total


def all_bitstrings(n):
    """Every bitstring, lexicographic order, as an int array of shape (2**n, n)."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product((0, 1), repeat=n)), dtype=np.int64)


def direct_energies(instance, pairs, lambda1, lambda2):
    """Vectorised ``direct_energy`` over all 2**N states."""
    bits = all_bitstrings(len(pairs))
    scores = np.array([raw_score(instance, v, a) for v, a in pairs])
    vacants = sorted({v for v, _ in pairs})
    agents = sorted({a for _, a in pairs})
    row = np.array([[1 if v == r else 0 for v, _ in pairs] for r in vacants]).reshape(len(vacants), len(pairs))
    col = np.array([[1 if a == c else 0 for _, a in pairs] for c in agents]).reshape(len(agents), len(pairs))
    energies = -(bits @ scores)
    energies = energies + lambda1 * ((bits @ row.T - 0.5) ** 2).sum(axis=1)
    energies = energies + lambda2 * ((bits @ col.T - 0.5) ** 2).sum(axis=1)
    return bits, energies


def qubo_energy_by_loops(problem, bits):
    total = problem.offset
    for a in range(problem.n):
        total += problem.linear[a] * bits[a]
    for (a, b), q in problem.quadratic.items():
        total += q * bits[a] * bits[b]
    return total


def brute_force_minimum(problem):
    """(minimum energy, all minimising bitstrings) by plain enumeration."""
    best, states = np.inf, []
    for bits in itertools.product((0, 1), repeat=problem.n):
        e = qubo_energy_by_loops(problem, bits)
        if e < best - 1e-9:
            best, states = e, [bits]
        elif abs(e - best) <= 1e-9:
            states.append(bits)
    return best, states


def filter_pairs(instance, vacants, agents):
    """Double loop re-implementation of candidate pruning."""
    kept = []
    for v in vacants:
        for a in agents:
            if v.priority - a.priority > 0 and raw_score(instance, v.job, a.agent) > 0:
                kept.append((v.job, a.agent))
    return kept


def random_instance(rng, J, I, *, mode=PriorityMode.CONTINUOUS, levels=4, count_max=6):
    """Independent instance factory with random weights."""
    if mode is PriorityMode.DISCRETE:
        def prio():
            return float(rng.integers(1, levels + 1)) / levels
    else:
        def prio():
            return float(1.0 - rng.random())
    assigned = tuple(AssignedJob(f"c{j}", f"ag{j}", prio()) for j in range(J))
    vacants = tuple(VacantJob(f"e{i}", prio()) for i in range(I))
    counts = {}
    for job in [a.job for a in assigned] + [v.job for v in vacants]:
        for a in assigned:
            m = int(rng.integers(0, count_max + 1))
            if job == a.job:
                m = max(m, 1)
            if m:
                counts[(job, a.agent)] = m
    return JrpInstance(
        assigned=assigned,
        vacants=vacants,
        affinities=AffinityTable(counts),
        weight_priority=float(rng.uniform(0.2, 2.0)),
        weight_affinity=float(rng.uniform(0.05, 1.0)),
        priority_mode=mode,
    )


def random_pairs(rng, instance, max_vars):
    grid = [(v.job, a.agent) for v in instance.vacants for a in instance.assigned]
    size = int(rng.integers(1, min(max_vars, len(grid)) + 1))
    chosen = rng.choice(len(grid), size=size, replace=False)
    return [grid[k] for k in sorted(chosen)]


def feasible(pairs, bits):
    rows, cols = set(), set()
    for (v, a), x in zip(pairs, bits):
        if x:
            if v in rows or a in cols:
                return False
            rows.add(v)
            cols.add(a)
    return True


def replay(instance, report):
    """Independently re-walk the move history band by band.

    Checks every move's gain and score against the state at the time it was
    applied and returns how many jobs were covered after each band.
    """
    current = {a.agent: (a.job, a.priority) for a in instance.assigned}
    priority = {a.job: a.priority for a in instance.assigned}
    priority.update({v.job: v.priority for v in instance.vacants})
    counts = dict(instance.affinities.counts)
    sizes = []
    for band in report.per_band:
        for m in band.moves:
            job, p_c = current[m.agent]
            assert job == m.vacated
            p_v = priority[m.vacant]
            assert p_v - p_c > 0
            m_v = counts.get((m.vacant, m.agent), 0)
            m_c = counts.get((job, m.agent), 0)
            s = instance.weight_priority * (p_v - p_c) + instance.weight_affinity * (
                m_v / (1 + m_v) - m_c / (1 + m_c)
            )
            assert s > 0
            assert abs(s - m.score) <= 1e-12
        # moves inside a band are simultaneous
        for m in band.moves:
            current[m.agent] = (m.vacant, priority[m.vacant])
            counts[(m.vacant, m.agent)] = counts.get((m.vacant, m.agent), 0) + 1
        jobs = [j for j, _ in current.values()]
        assert len(set(jobs)) == len(jobs)
        sizes.append(len(set(jobs)))
    assert sorted(report.final_assigned) == sorted((j, a) for a, (j, _) in current.items())
    return sizes
