import pytest

from jrpqubo.errors import ParameterError
from jrpqubo.generator import GeneratorParams, generate
from jrpqubo.heuristics import build_plan
from jrpqubo.instance_io import dump_instance
from jrpqubo.model import PriorityMode


def test_sizes_follow_fraction():
    params = GeneratorParams(total_jobs=10, vacancy_fraction=0.3)
    assert (params.num_vacant, params.num_assigned) == (3, 7)
    inst = generate(params)
    assert inst.num_vacant == 3 and inst.num_assigned == 7


def test_same_seed_same_bytes():
    a = dump_instance(generate(GeneratorParams(total_jobs=12, seed=5)))
    b = dump_instance(generate(GeneratorParams(total_jobs=12, seed=5)))
    c = dump_instance(generate(GeneratorParams(total_jobs=12, seed=6)))
    assert a == b
    assert a != c


def test_current_assignments_have_history():
    inst = generate(GeneratorParams(total_jobs=20, seed=2))
    for a in inst.assigned:
        assert inst.affinities.count(a.job, a.agent) >= 1


def test_discrete_levels():
    inst = generate(GeneratorParams(total_jobs=30, levels=3, mode=PriorityMode.DISCRETE, seed=4))
    values = {v.priority for v in inst.vacants} | {a.priority for a in inst.assigned}
    assert values <= {1 / 3, 2 / 3, 1.0}
    plan = build_plan(inst)
    assert plan.D == len({v.priority for v in inst.vacants})


@pytest.mark.parametrize("p", [0.0, 1.0, -0.2, 1.5])
def test_bad_fraction(p):
    with pytest.raises(ParameterError):
        GeneratorParams(total_jobs=10, vacancy_fraction=p)
