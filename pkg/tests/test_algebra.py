import itertools

import numpy as np
import pytest

from artinpp.algebra import (
    AlgebraError,
    QuiverPresentation,
    a2,
    a3,
    algebra_from_quiver,
    algebra_from_structconst,
    dual_numbers,
    field_algebra,
    gf4,
    is_associative,
    linear_quiver,
    monogenic,
    radical_power_dims,
    split_monogenic,
    truncated_polynomial,
    vertex_index,
    with_radical,
)


def brute_products(alg):
    """Products of every pair of basis elements, element by element."""
    return {(i, j): tuple(alg.multiply(alg.basis_element(i), alg.basis_element(j)).tolist()) for i in range(alg.dim) for j in range(alg.dim)}


def test_small_dimensions():
    assert field_algebra(3).dim == 1
    assert dual_numbers().dim == 2
    assert truncated_polynomial(4).dim == 4
    assert a2().dim == 3
    assert a3().dim == 6
    assert a3(zero_relation=True).dim == 5
    assert gf4().dim == 2


@pytest.mark.parametrize(
    "alg",
    [dual_numbers(3), truncated_polynomial(3), gf4(), a2(3), a3(), a3(zero_relation=True), monogenic([1, 1, 0]), split_monogenic()],
    ids=lambda a: repr(a)[:40],
)
def test_associative_with_unit(alg):
    assert is_associative(alg)
    for i in range(alg.dim):
        b = alg.basis_element(i)
        assert np.array_equal(alg.multiply(alg.unit, b), b)
        assert np.array_equal(alg.multiply(b, alg.unit), b)
    # triple products against explicit bracketings
    for i, j, k in itertools.product(range(alg.dim), repeat=3):
        bi, bj, bk = (alg.basis_element(t) for t in (i, j, k))
        assert np.array_equal(alg.multiply(alg.multiply(bi, bj), bk), alg.multiply(bi, alg.multiply(bj, bk)))


def test_multiplication_matrices_agree_with_multiply(rng):
    alg = a3(3)
    for _ in range(10):
        x, y = rng.integers(0, 3, alg.dim), rng.integers(0, 3, alg.dim)
        xy = alg.multiply(x, y)
        assert np.array_equal(alg.left_matrix(x) @ y % 3, xy)
        assert np.array_equal(alg.right_matrix(y) @ x % 3, xy)


def test_quiver_composition_order():
    alg = a2()
    # arrow a: vertex 0 -> vertex 1, so e2 * a = a = a * e1
    e1, e2 = alg.basis_element(vertex_index(alg, 0)), alg.basis_element(vertex_index(alg, 1))
    a = alg.basis_element(alg.label_index("a"))
    assert np.array_equal(alg.multiply(e2, a), a)
    assert np.array_equal(alg.multiply(a, e1), a)
    assert not alg.multiply(a, e2).any() and not alg.multiply(e1, a).any()
    assert not alg.is_commutative


def test_zero_relation_kills_the_long_path():
    full, rel = a3(), a3(zero_relation=True)
    a, b = full.basis_element(full.label_index("a")), full.basis_element(full.label_index("b"))
    assert full.multiply(b, a).any()
    ra, rb = rel.basis_element(rel.label_index("a")), rel.basis_element(rel.label_index("b"))
    assert not rel.multiply(rb, ra).any()


def test_opposite_reverses_products():
    alg = a3()
    op = alg.opposite
    for (i, j), prod in brute_products(alg).items():
        assert tuple(op.multiply(alg.basis_element(j), alg.basis_element(i)).tolist()) == prod
    assert op.opposite == alg


def test_monogenic_relation():
    # K[t]/(t^3 + t + 1) over GF(2) is the field GF(8): t^3 = t + 1
    alg = monogenic([1, 1, 0])
    t = alg.basis_element(1)
    t3 = alg.multiply(t, alg.multiply(t, t))
    assert t3.tolist() == [1, 1, 0]
    assert alg.is_commutative


def test_gf4_has_inverses():
    alg = gf4()
    for x in ([1, 0], [0, 1], [1, 1]):
        assert any(np.array_equal(alg.multiply(x, y), alg.unit) for y in ([1, 0], [0, 1], [1, 1]))


def test_radical_data():
    assert radical_power_dims(truncated_polynomial(4)) == [3, 2, 1]
    assert radical_power_dims(a3()) == [3, 1]
    assert radical_power_dims(a3(zero_relation=True)) == [2]
    assert radical_power_dims(gf4()) == []
    sm = split_monogenic()
    assert len(sm.idempotents) == 2 and radical_power_dims(sm) == [1]
    with pytest.raises(AlgebraError):
        radical_power_dims(monogenic([1, 1, 0]))


def test_with_radical_validation():
    dn = dual_numbers()
    plain = algebra_from_structconst(dn.structconst, 2)
    assert not plain.has_radical
    assert with_radical(plain, [[0, 1]], [[1, 0]]).has_radical
    with pytest.raises(AlgebraError, match="nilpotent|ideal"):
        with_radical(plain, [[1, 0]], [[1, 0]])
    with pytest.raises(AlgebraError, match="sum to 1"):
        with_radical(a2(), a2().radical_basis, a2().idempotents[:1])


def test_structconst_errors():
    with pytest.raises(AlgebraError, match="associative"):
        # b1 b1 = b0 with b0 acting as identity except b1 * b0 = 0
        c = np.zeros((2, 2, 2), dtype=np.int64)
        c[0, 0, 0] = c[0, 1, 1] = c[1, 1, 0] = 1
        algebra_from_structconst(c, 2)
    with pytest.raises(AlgebraError, match="unit"):
        algebra_from_structconst(np.zeros((2, 2, 2), dtype=np.int64), 2)
    with pytest.raises(AlgebraError, match="shape"):
        algebra_from_structconst(np.zeros((2, 2), dtype=np.int64), 2)
    with pytest.raises(AlgebraError, match="identity"):
        algebra_from_structconst(dual_numbers().structconst, 2, unit=[0, 1])
    with pytest.raises(ValueError):
        algebra_from_structconst(dual_numbers().structconst, 4)


def test_quiver_errors():
    loop = QuiverPresentation(1, ((0, 0),))
    with pytest.raises(AlgebraError, match="exceeds"):
        algebra_from_quiver(loop, 2, max_dim=10)
    truncated = QuiverPresentation(1, ((0, 0),), (((1, (0, 0, 0)),),))
    assert algebra_from_quiver(truncated).dim == 3
    with pytest.raises(AlgebraError, match="length"):
        linear_quiver(2, [((1, (0,)),)])
    with pytest.raises(AlgebraError, match="composable"):
        linear_quiver(3, [((1, (0, 1)),)])
    with pytest.raises(AlgebraError, match="outside"):
        QuiverPresentation(2, ((0, 2),))


def test_label_lookup():
    alg = a2()
    with pytest.raises(AlgebraError, match="unknown basis symbol"):
        alg.label_index("zz")
    assert alg.format_element(alg.unit) == "1"
    assert alg.format_element(np.zeros(alg.dim, dtype=np.int64)) == "0"
    assert dual_numbers(3).format_element([0, 2]) == "2*eps"
