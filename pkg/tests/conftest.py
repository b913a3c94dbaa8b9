import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from artinpp.algebra import a2, a3, dual_numbers, gf4, split_monogenic, truncated_polynomial
from artinpp.modules import free_module, generated_submodule, quotient_module, simple_module

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def dn():
    return dual_numbers()


@pytest.fixture(scope="session")
def dn_k(dn):
    """The simple module ``K = R / eps R`` over the dual numbers."""
    r = free_module(dn)
    return quotient_module(r, generated_submodule(r, dn.basis_element(1)))[0]


@pytest.fixture(scope="session")
def alg_a2():
    return a2()


@pytest.fixture(scope="session")
def a2_simples(alg_a2):
    """``(S1, S2)``: the source simple (not projective) and the sink simple (projective)."""
    return simple_module(alg_a2, 0), simple_module(alg_a2, 1)


@pytest.fixture(scope="session")
def small_algebras():
    return [dual_numbers(), truncated_polynomial(3), gf4(), a2(), a3(zero_relation=True), split_monogenic()]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
