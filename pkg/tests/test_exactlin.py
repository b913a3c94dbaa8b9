import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from artinpp.exactlin import (
    FieldElement,
    Quotient,
    Subspace,
    annihilator,
    check_prime,
    inv,
    is_invertible,
    is_prime,
    nullspace,
    pairing_annihilator,
    rank,
    rref,
    rref_decompose,
    solve,
)
from oracles import all_vectors, span_elements

PRIMES = [2, 3, 5]


@st.composite
def matrices(draw, max_rows=4, max_cols=4, primes=PRIMES):
    p = draw(st.sampled_from(primes))
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    return np.array(entries, dtype=np.int64).reshape(rows, cols), p


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert check_prime(97) == 97
    for bad in (1, 4, 101):
        with pytest.raises(ValueError):
            check_prime(bad)


def test_inverse_and_field_elements():
    for p in (2, 3, 7, 97):
        for a in range(1, p):
            assert a * inv(a, p) % p == 1
    with pytest.raises(ZeroDivisionError):
        inv(0, 5)
    x = FieldElement(3, 7)
    assert int(x * x.inverse()) == 1
    assert x + 5 == FieldElement(1, 7)
    assert -x == FieldElement(4, 7)
    assert 2 - x == FieldElement(6, 7)


def test_rref_example():
    m = np.array([[1, 1, 0], [1, 1, 1], [0, 0, 1]])
    r, piv = rref(m, 2)
    assert piv == (0, 2)
    assert r.tolist() == [[1, 1, 0], [0, 0, 1], [0, 0, 0]]


@given(matrices())
def test_rref_is_idempotent_and_row_equivalent(mp):
    m, p = mp
    r, piv = rref(m, p)
    r2, piv2 = rref(r, p)
    assert np.array_equal(r, r2) and piv == piv2
    if m.shape[0]:
        assert Subspace.span(m, m.shape[1], p) == Subspace.span(r, m.shape[1], p)
    for i, c in enumerate(piv):
        assert r[i, c] == 1 and np.count_nonzero(r[:, c]) == 1


@given(matrices(max_rows=3, max_cols=4, primes=[2, 3]))
def test_nullspace_matches_enumeration(mp):
    m, p = mp
    ker = {tuple(v.tolist()) for v in all_vectors(m.shape[1], p) if not np.any(m @ v % p)}
    null = nullspace(m, p)
    assert span_elements(null, p, m.shape[1]) == ker
    assert rank(m, p) + null.shape[0] == m.shape[1]


@given(matrices(max_rows=3, max_cols=3, primes=[2, 3]), st.data())
def test_solve_matches_enumeration(mp, data):
    a, p = mp
    b = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=a.shape[0], max_size=a.shape[0])), dtype=np.int64)
    x = solve(a, b, p)
    reachable = any(not np.any((a @ v - b) % p) for v in all_vectors(a.shape[1], p))
    assert (x is not None) == reachable
    if x is not None:
        assert not np.any((a @ x - b) % p)


def test_invertibility():
    assert is_invertible(np.eye(3, dtype=np.int64), 2)
    assert not is_invertible([[1, 1], [1, 1]], 2)
    assert is_invertible([[1, 1], [1, 2]], 3)
    assert not is_invertible(np.ones((2, 3), dtype=np.int64), 2)


@given(matrices(max_rows=3, max_cols=4, primes=[2, 3]), matrices(max_rows=3, max_cols=4, primes=[2, 3]))
def test_sum_and_intersection_match_enumeration(m1, m2):
    (a, p), (b, _) = m1, m2
    n = a.shape[1]
    b = b[:, :n] % p if b.shape[1] >= n else np.zeros((0, n), dtype=np.int64)
    u, v = Subspace.span(a, n, p), Subspace.span(b, n, p)
    eu, ev = span_elements(u.basis, p, n), span_elements(v.basis, p, n)
    assert span_elements((u & v).basis, p, n) == eu & ev
    assert (u + v).dim + (u & v).dim == u.dim + v.dim
    assert u.issubspace(u + v) and (u & v).issubspace(v)


@given(matrices(max_rows=4, max_cols=4))
def test_annihilator_is_perpendicular_complement(mp):
    m, p = mp
    n = m.shape[1]
    s = Subspace.span(m, n, p)
    ann = annihilator(s)
    assert ann.dim + s.dim == n
    assert not np.any(ann.basis @ s.basis.T % p)
    assert annihilator(ann) == s
    assert pairing_annihilator(s, np.eye(n, dtype=np.int64)) == ann


def test_pairing_annihilator_rejects_degenerate_pairing():
    s = Subspace.span([[1, 0]], 2, 2)
    with pytest.raises(ValueError):
        pairing_annihilator(s, [[1, 1], [1, 1]])


def test_subspace_equality_is_canonical():
    a = Subspace.span([[1, 1, 0], [0, 1, 1]], 3, 2)
    b = Subspace.span([[1, 0, 1], [1, 1, 0], [0, 1, 1]], 3, 2)
    assert a == b and hash(a) == hash(b)
    assert Subspace.zero(3, 2) != a
    assert Subspace.whole(3, 2).dim == 3
    assert a != Subspace.span([[1, 1, 0, 0], [0, 1, 1, 0]], 4, 2)


def test_kernel_image_preimage():
    m = np.array([[1, 0, 1], [0, 1, 1]])
    d = rref_decompose(m, 2)
    assert d.rank == 2 and d.kernel.dim == 1 and d.image.dim == 2
    assert d.kernel.contains([1, 1, 1])
    line = Subspace.span([[1, 0]], 2, 2)
    pre = line.preimage(m)
    assert {tuple(v.tolist()) for v in all_vectors(3, 2) if line.contains(m @ v % 2)} == span_elements(pre.basis, 2, 3)
    assert Subspace.whole(3, 2).image(m) == Subspace.whole(2, 2)


def test_quotient_coordinates_roundtrip():
    p = 3
    total = Subspace.span([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]], 4, p)
    rel = Subspace.span([[1, 2, 0, 0]], 4, p)
    q = Quotient(total, rel)
    assert q.dim == 2
    c = np.array([2, 1])
    assert np.array_equal(q.coords(q.lift(c)), c)
    # elements differing by a relation get the same coordinates
    v = np.array([1, 1, 1, 0])
    assert np.array_equal(q.coords(v), q.coords((v + np.array([1, 2, 0, 0])) % p))
    with pytest.raises(ValueError):
        Quotient(rel, total)


def test_quotient_induced_map_checks_preservation():
    q = Quotient.of(2, Subspace.span([[1, 0]], 2, 2))
    swap = np.array([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        q.induced(swap, q)
    assert q.induced(np.eye(2, dtype=np.int64), q).tolist() == [[1]]
