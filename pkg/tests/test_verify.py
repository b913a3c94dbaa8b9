import json

import numpy as np
import pytest

from artinpp.jsonio import algebra_from_dict, formula_from_dict, module_from_dict
from artinpp.modules import check_module, module_map
from artinpp.pp import free_realization, witness
from artinpp.verify import (
    REGISTRY,
    CheckSpec,
    Context,
    GenerationError,
    Sizes,
    UnknownCheck,
    check_names,
    corrupted_dual_formula,
    gen_random_instance,
    random_pair,
    reports_json,
    reports_text,
    run_all,
    run_check,
)

FEW = Sizes(instances=6)


def test_registry_has_thirteen_checks():
    assert len(check_names()) == 13
    assert all(REGISTRY[n].description for n in check_names())


def test_sizes_parse():
    s = Sizes.parse("instances=7, module-dim=3")
    assert s.instances == 7 and s.module_dim == 3 and s.algebra_dim == 6
    assert Sizes.parse("") == Sizes()
    for bad in ("instances", "colour=3", "instances=x"):
        with pytest.raises(ValueError):
            Sizes.parse(bad)


def test_instance_stream_is_deterministic():
    a = gen_random_instance(0, Sizes(), 3).to_dict()
    b = gen_random_instance(0, Sizes(), 3).to_dict()
    assert a == b
    assert gen_random_instance(1, Sizes(), 3).to_dict() != a


def test_generator_self_check():
    sizes = Sizes()
    for i in range(100):
        inst = gen_random_instance(0, sizes, i)
        assert inst.algebra.dim <= sizes.algebra_dim
        for m in inst.modules:
            assert m.dim <= sizes.module_dim
            check_module(m)
        for g in inst.maps:
            module_map(g.source, g.target, g.matrix)
        pair = inst.pair
        assert pair.phi.n + max(pair.phi.m, pair.psi.m) <= sizes.arity
        # the stored certificate really witnesses psi <= phi
        real = free_realization(pair.psi)
        assert witness(pair.phi, real.module, real.flat_tuple) is not None


def test_tiny_modules_are_zero_or_simple():
    for i in range(30):
        inst = gen_random_instance(5, Sizes(module_dim=1), i)
        assert all(m.dim <= 1 for m in inst.modules)


def test_generation_errors():
    with pytest.raises(GenerationError):
        gen_random_instance(0, Sizes(algebra_dim=0))
    with pytest.raises(GenerationError):
        random_pair(gen_random_instance(0).algebra, "left", 0, np.random.default_rng(0))


def test_instances_serialize_and_reload():
    inst = gen_random_instance(2, Sizes(), 4)
    data = json.loads(json.dumps(inst.to_dict()))
    alg = algebra_from_dict(data["algebra"])
    assert alg == inst.algebra
    for md, m in zip(data["modules"], inst.modules):
        assert np.array_equal(module_from_dict(md, alg).action, m.action)
    phi = formula_from_dict(data["formulas"][0], alg)
    assert phi.same_matrices(inst.pair.phi)


@pytest.mark.parametrize("name", check_names())
def test_every_check_passes_on_a_few_instances(name):
    report = run_check(CheckSpec(name, 0, FEW))
    assert report.passed, report.failures[:1]
    assert report.instances_run == FEW.instances
    assert len(report.dims_table) == FEW.instances


def test_zero_instances_is_a_vacuous_pass():
    report = run_check(CheckSpec("dual-annihilator", 0, Sizes(instances=0)))
    assert report.passed and report.instances_run == 0 and report.dims_table == []


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        run_check(CheckSpec("bogus"))


def test_corrupted_dual_is_caught():
    ctx = Context(dual_formula=corrupted_dual_formula)
    report = run_check(CheckSpec("annihilator-dual-formula", 0, Sizes(instances=20)), ctx)
    assert not report.passed
    failure = report.failures[0]
    assert "message" in failure and "algebra" in failure and "modules" in failure
    # the counterexample reloads
    alg = algebra_from_dict(failure["algebra"])
    for md in failure["modules"]:
        module_from_dict(md, alg)


def test_reports_are_deterministic():
    names = ["dual-annihilator", "ext-shift"]
    a = reports_json(run_all(3, FEW, names))
    b = reports_json(run_all(3, FEW, names))
    assert a == b
    body = json.loads(a)
    assert body["passed"] and [c["name"] for c in body["checks"]] == names
    text = reports_text(run_all(3, FEW, names))
    assert "2/2 checks passed" in text and "== ext-shift" in text
