"""Brute-force reference computations by exhaustive enumeration over GF(p).

Nothing here calls row reduction; each oracle enumerates vectors, matrices
or bilinear forms directly from the definitions.
"""

import itertools

import numpy as np


def all_vectors(k: int, p: int):
    for t in itertools.product(range(p), repeat=k):
        yield np.array(t, dtype=np.int64)


def span_elements(basis: np.ndarray, p: int, ambient: int) -> set:
    """Every element of the span, by enumerating coefficient vectors."""
    if ambient == 0:
        return {()}
    basis = np.asarray(basis, dtype=np.int64).reshape(-1, ambient)
    out = set()
    for c in all_vectors(basis.shape[0], p):
        out.add(tuple((c @ basis % p).tolist()) if basis.shape[0] else (0,) * ambient)
    return out


def act(module, r, v):
    """``r`` acting on ``v``, straight from the action matrices."""
    mat = sum(int(c) * module.action[t] for t, c in enumerate(r))
    return np.asarray(mat, dtype=np.int64) @ v % module.p if module.dim else v


def brute_solution_set(phi, module) -> set:
    """All ``x`` in ``M^n`` for which some ``y`` in ``M^m`` solves every equation."""
    d, p = module.dim, module.p
    out = set()
    ys = [y.reshape(phi.m, d) for y in all_vectors(phi.m * d, p)]
    for x in all_vectors(phi.n * d, p):
        xs = x.reshape(phi.n, d)
        for y in ys:
            ok = True
            for i in range(phi.l):
                lhs = sum((act(module, phi.A[i, j], xs[j]) for j in range(phi.n)), np.zeros(d, dtype=np.int64))
                rhs = sum((act(module, phi.B[i, k], y[k]) for k in range(phi.m)), np.zeros(d, dtype=np.int64))
                if np.any((lhs - rhs) % p):
                    ok = False
                    break
            if ok:
                out.add(tuple(x.tolist()))
                break
    return out


def brute_hom(m, n) -> set:
    """All ``dim N x dim M`` matrices commuting with every basis action."""
    p = m.p
    out = set()
    for flat in all_vectors(n.dim * m.dim, p):
        x = flat.reshape(n.dim, m.dim)
        if all(not np.any((x @ m.action[t] - n.action[t] @ x) % p) for t in range(m.algebra.dim)):
            out.add(tuple(flat.tolist()))
    return out


def brute_balanced_forms(right, left) -> set:
    """Bilinear forms ``b`` on ``N x M`` with ``b(n r, x) = b(n, r x)`` for every basis ``r``."""
    p = right.p
    out = set()
    for flat in all_vectors(right.dim * left.dim, p):
        b = flat.reshape(right.dim, left.dim)
        if all(not np.any((right.action[t].T @ b - b @ left.action[t]) % p) for t in range(right.algebra.dim)):
            out.add(tuple(flat.tolist()))
    return out


def log_p(count: int, p: int) -> int:
    k = 0
    while p**k < count:
        k += 1
    assert p**k == count, f"{count} is not a power of {p}"
    return k


def brute_ext1(n, m) -> int:
    """``dim Ext^1(N, M)`` for left modules, counting extension cocycles.

    An extension ``0 -> M -> E -> N -> 0`` has action ``[[rho_M, c], [0, rho_N]]``;
    ``c`` must satisfy ``c(xy) = rho_M(x) c(y) + c(x) rho_N(y)`` and ``c(1) = 0``.
    Split extensions are the ``c(t) = rho_M(t) X - X rho_N(t)``.
    """
    alg, p = n.algebra, n.p
    d, dm, dn = alg.dim, m.dim, n.dim
    sc = alg.structconst
    cocycles = 0
    for flat in all_vectors(d * dm * dn, p):
        c = flat.reshape(d, dm, dn)
        if np.any(np.tensordot(alg.unit, c, axes=1) % p):
            continue
        ok = True
        for t in range(d):
            for s in range(d):
                lhs = m.action[t] @ c[s] + c[t] @ n.action[s]
                rhs = np.tensordot(sc[t, s], c, axes=1)
                if np.any((lhs - rhs) % p):
                    ok = False
                    break
            if not ok:
                break
        cocycles += ok
    boundaries = set()
    for flat in all_vectors(dm * dn, p):
        x = flat.reshape(dm, dn)
        c = np.stack([(m.action[t] @ x - x @ n.action[t]) % p for t in range(d)])
        boundaries.add(tuple(c.reshape(-1).tolist()))
    return log_p(cocycles, p) - log_p(len(boundaries), p)
