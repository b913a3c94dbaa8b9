"""Finite-dimensional algebras over GF(p) given by structure constants.

Basis element products are ``b_i * b_j = sum_k c[i, j, k] b_k``.  Quiver
algebras are built from paths; paths compose like functions, so the path
written ``a b`` means "first ``b``, then ``a``" and ``a * b`` is nonzero only
when ``b`` ends where ``a`` starts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .exactlin import Subspace, check_prime, identity, solve, zeros


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class QuiverPresentation:
    """Vertices ``0..vertices-1``, arrows ``(source, target)``, relations.

    Each relation is a list of ``(coefficient, path)`` terms, a path being a
    tuple of arrow indices in written (composition) order.
    """

    vertices: int
    arrows: tuple[tuple[int, int], ...]
    relations: tuple[tuple[tuple[int, tuple[int, ...]], ...], ...] = ()
    arrow_names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        object.__setattr__(
            self,
            "relations",
            tuple(tuple((int(c), tuple(path)) for c, path in rel) for rel in self.relations),
        )
        if self.arrow_names is None:
            object.__setattr__(self, "arrow_names", tuple(_default_arrow_name(i) for i in range(len(self.arrows))))
        else:
            object.__setattr__(self, "arrow_names", tuple(self.arrow_names))
        for s, t in self.arrows:
            if not (0 <= s < self.vertices and 0 <= t < self.vertices):
                raise AlgebraError(f"arrow ({s}, {t}) has an endpoint outside 0..{self.vertices - 1}")

    def source(self, path: tuple[int, ...], vertex: int | None = None) -> int:
        return self.arrows[path[-1]][0] if path else vertex

    def target(self, path: tuple[int, ...], vertex: int | None = None) -> int:
        return self.arrows[path[0]][1] if path else vertex

    def is_path(self, path: tuple[int, ...]) -> bool:
        return all(self.arrows[path[i + 1]][1] == self.arrows[path[i]][0] for i in range(len(path) - 1))


def _default_arrow_name(i: int) -> str:
    letters = "abcdfghijklmnopqrstuvwz"
    return letters[i] if i < len(letters) else f"a{i}"


@dataclass(frozen=True, eq=False)
class Algebra:
    """An associative unital algebra over GF(p).

    ``radical_basis`` (coefficient vectors spanning the Jacobson radical) and
    ``idempotents`` (a complete set of primitive orthogonal idempotents) are
    optional and are only needed for projective covers and the AR translate.
    """

    p: int
    structconst: np.ndarray
    unit: np.ndarray
    labels: tuple[str, ...]
    provenance: QuiverPresentation | None = None
    radical_basis: np.ndarray | None = None
    idempotents: np.ndarray | None = None
    # basis index -> (kind, data): ("vertex", v) or ("path", arrows); quiver only
    paths: tuple | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.structconst.shape[0]

    @property
    def has_radical(self) -> bool:
        return self.radical_basis is not None and self.idempotents is not None

    @cached_property
    def left_mult(self) -> np.ndarray:
        """``left_mult[i]`` is the matrix of ``x -> b_i x`` on coefficient columns."""
        return np.ascontiguousarray(self.structconst.transpose(0, 2, 1))

    @cached_property
    def right_mult(self) -> np.ndarray:
        """``right_mult[i]`` is the matrix of ``x -> x b_i``."""
        return np.ascontiguousarray(self.structconst.transpose(1, 2, 0))

    def element(self, coeffs) -> np.ndarray:
        v = np.asarray(coeffs, dtype=np.int64) % self.p
        if v.shape != (self.dim,):
            raise AlgebraError(f"element must have {self.dim} coefficients, got shape {v.shape}")
        return v

    def basis_element(self, i: int) -> np.ndarray:
        v = zeros(1, self.dim)[0]
        v[i] = 1
        return v

    def multiply(self, x, y) -> np.ndarray:
        x, y = self.element(x), self.element(y)
        return np.einsum("i,j,ijk->k", x, y, self.structconst) % self.p

    def left_matrix(self, x) -> np.ndarray:
        return np.tensordot(self.element(x), self.left_mult, axes=1) % self.p

    def right_matrix(self, x) -> np.ndarray:
        return np.tensordot(self.element(x), self.right_mult, axes=1) % self.p

    def label_index(self, name: str) -> int:
        try:
            return self.labels.index(name)
        except ValueError:
            raise AlgebraError(f"unknown basis symbol {name!r}; known: {', '.join(self.labels)}") from None

    def format_element(self, x) -> str:
        x = self.element(x)
        if np.array_equal(x, self.unit):
            return "1"
        terms = []
        for i in np.flatnonzero(x):
            c = int(x[i])
            terms.append(self.labels[i] if c == 1 else f"{c}*{self.labels[i]}")
        return " + ".join(terms) if terms else "0"

    @cached_property
    def opposite(self) -> "Algebra":
        return opposite_algebra(self)

    @cached_property
    def is_commutative(self) -> bool:
        return np.array_equal(self.structconst, self.structconst.transpose(1, 0, 2))

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.p == other.p
            and np.array_equal(self.structconst, other.structconst)
            and np.array_equal(self.unit, other.unit)
        )

    def __hash__(self):
        return hash((self.p, self.structconst.tobytes()))

    def __repr__(self):
        kind = "quiver" if self.provenance else "structconst"
        return f"Algebra(dim={self.dim}, p={self.p}, {kind}, labels={list(self.labels)})"


def _associativity_failure(c: np.ndarray, p: int):
    # (b_i b_j) b_k vs b_i (b_j b_k)
    left = np.einsum("ijm,mkn->ijkn", c, c) % p
    right = np.einsum("jkm,imn->ijkn", c, c) % p
    bad = np.argwhere(np.any(left != right, axis=3))
    return tuple(int(t) for t in bad[0]) if len(bad) else None


def _find_unit(c: np.ndarray, p: int) -> np.ndarray | None:
    d = c.shape[0]
    # u * b_j = b_j and b_j * u = b_j for all j: linear in u
    rows, rhs = [], []
    for j in range(d):
        rows.append(c[:, j, :].T)
        rows.append(c[j, :, :].T)
        e = zeros(1, d)[0]
        e[j] = 1
        rhs += [e, e]
    u = solve(np.vstack(rows), np.concatenate(rhs), p)
    return None if u is None else u % p


def algebra_from_structconst(
    structconst,
    p: int = 2,
    labels=None,
    unit=None,
    radical_basis=None,
    idempotents=None,
) -> Algebra:
    """Validate structure constants and build an :class:`Algebra`.

    Raises :class:`AlgebraError` naming the first non-associative basis
    triple, or when no two-sided unit exists.
    """
    check_prime(p)
    c = np.asarray(structconst, dtype=np.int64) % p
    if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]) or c.shape[0] == 0:
        raise AlgebraError(f"structure constants must have shape (d, d, d) with d >= 1, got {c.shape}")
    d = c.shape[0]
    bad = _associativity_failure(c, p)
    if bad is not None:
        i, j, k = bad
        raise AlgebraError(f"not associative: (b{i} b{j}) b{k} != b{i} (b{j} b{k})")
    if unit is None:
        u = _find_unit(c, p)
        if u is None:
            raise AlgebraError("no two-sided unit")
    else:
        u = np.asarray(unit, dtype=np.int64) % p
        left = np.einsum("i,ijk->jk", u, c) % p
        right = np.einsum("j,ijk->ik", u, c) % p
        if not (np.array_equal(left, identity(d)) and np.array_equal(right, identity(d))):
            raise AlgebraError("the given unit is not a two-sided identity")
    labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(d))
    if len(labels) != d or len(set(labels)) != d:
        raise AlgebraError("labels must be distinct and one per basis element")
    c.setflags(write=False)
    alg = Algebra(p, c, u, labels)
    if radical_basis is not None or idempotents is not None:
        alg = with_radical(alg, radical_basis, idempotents)
    return alg


def with_radical(alg: Algebra, radical_basis, idempotents) -> Algebra:
    """Attach radical data after checking it.

    The radical must be a nilpotent two-sided ideal and the idempotents must
    be orthogonal, sum to 1, and each be nonzero modulo the radical.
    """
    p, d = alg.p, alg.dim
    rad = np.asarray(radical_basis if radical_basis is not None else np.zeros((0, d)), dtype=np.int64).reshape(-1, d) % p
    idem = np.asarray(idempotents if idempotents is not None else [alg.unit], dtype=np.int64).reshape(-1, d) % p
    rad_space = Subspace.span(rad, d, p)
    rad = rad_space.basis
    for r in rad:
        for i in range(d):
            b = alg.basis_element(i)
            if not (rad_space.contains(alg.multiply(b, r)) and rad_space.contains(alg.multiply(r, b))):
                raise AlgebraError("radical_basis does not span a two-sided ideal")
    power = rad_space
    for _ in range(d + 1):
        if power.dim == 0:
            break
        prods = [alg.multiply(x, r) for x in power.basis for r in rad]
        power = Subspace.span(prods, d, p) if prods else Subspace.zero(d, p)
    if power.dim != 0:
        raise AlgebraError("radical_basis is not nilpotent")
    for i, e in enumerate(idem):
        for j, f in enumerate(idem):
            expected = e if i == j else zeros(1, d)[0]
            if not np.array_equal(alg.multiply(e, f), expected):
                raise AlgebraError("idempotents are not orthogonal idempotents")
        if rad_space.contains(e):
            raise AlgebraError("an idempotent lies in the radical")
    if not np.array_equal(idem.sum(axis=0) % p, alg.unit):
        raise AlgebraError("idempotents do not sum to 1")
    rad.setflags(write=False)
    idem.setflags(write=False)
    return Algebra(alg.p, alg.structconst, alg.unit, alg.labels, alg.provenance, rad, idem, alg.paths)


def opposite_algebra(a: Algebra) -> Algebra:
    c = np.ascontiguousarray(a.structconst.transpose(1, 0, 2))
    c.setflags(write=False)
    return Algebra(a.p, c, a.unit, a.labels, a.provenance, a.radical_basis, a.idempotents, a.paths)


def multiply_elements(a: Algebra, x, y) -> np.ndarray:
    return a.multiply(x, y)


def _enumerate_paths(q: QuiverPresentation, max_len: int) -> list[tuple]:
    """Basis paths as ("vertex", v) and ("path", arrows), by length."""
    out = [("vertex", v) for v in range(q.vertices)]
    frontier = [(i,) for i in range(len(q.arrows))]
    for _ in range(max_len):
        if not frontier:
            break
        out += [("path", pth) for pth in frontier]
        # extend on the left: new arrow must start where the path ends
        frontier = [(i,) + pth for pth in frontier for i in range(len(q.arrows)) if q.arrows[i][0] == q.target(pth)]
    return out


def _path_product(q: QuiverPresentation, x, y):
    (kx, dx), (ky, dy) = x, y
    if kx == "vertex" and ky == "vertex":
        return x if dx == dy else None
    if kx == "vertex":
        return y if q.target(dy) == dx else None
    if ky == "vertex":
        return x if q.source(dx) == dy else None
    return ("path", dx + dy) if q.source(dx) == q.target(dy) else None


MAX_QUIVER_DIM = 64


def algebra_from_quiver(q: QuiverPresentation, p: int = 2, max_dim: int = MAX_QUIVER_DIM) -> Algebra:
    """Path algebra of ``q`` modulo its relations.

    The relation ideal must be admissible.  A path basis that keeps growing
    past ``max_dim`` is reported as infinite.
    """
    check_prime(p)
    for rel in q.relations:
        if not rel:
            raise AlgebraError("empty relation")
        ends = set()
        for _, path in rel:
            if len(path) < 2:
                raise AlgebraError(f"relation term {path} has length < 2; relations must lie in the square of the arrow ideal")
            if not q.is_path(path):
                raise AlgebraError(f"relation term {path} is not a composable path")
            ends.add((q.source(path), q.target(path)))
        if len(ends) != 1:
            raise AlgebraError("relation terms are not parallel paths")
    start = max([2] + [len(path) for rel in q.relations for _, path in rel])
    for length in range(start, max_dim + 2):
        basis_paths = _enumerate_paths(q, length)
        index = {pth: i for i, pth in enumerate(basis_paths)}
        n = len(basis_paths)
        if n > max_dim * 4 + q.vertices:
            break
        longest = [pth for pth in basis_paths if pth[0] == "path" and len(pth[1]) == length]
        gens = []
        for rel in q.relations:
            v = zeros(1, n)[0]
            for coeff, path in rel:
                v[index[("path", path)]] += coeff
            gens.append(v % p)
        ideal_vecs = []
        for r in gens:
            for u in basis_paths:
                for w in basis_paths:
                    vec = zeros(1, n)[0]
                    for i in np.flatnonzero(r):
                        left = _path_product(q, u, basis_paths[i])
                        if left is None or (left[0] == "path" and len(left[1]) > length):
                            continue
                        full = _path_product(q, left, w)
                        if full is None or (full[0] == "path" and len(full[1]) > length):
                            continue
                        vec[index[full]] += r[i]
                    if np.any(vec % p):
                        ideal_vecs.append(vec % p)
        ideal = Subspace.span(ideal_vecs, n, p) if ideal_vecs else Subspace.zero(n, p)
        # all length-`length` paths in the ideal: the quotient is already finite
        if all(ideal.contains(_unit_vec(n, index[pth])) for pth in longest):
            return _quotient_path_algebra(q, p, basis_paths, index, ideal, max_dim)
    raise AlgebraError(f"path basis exceeds {max_dim}: relations are not admissible or a cycle is not truncated")


def _unit_vec(n: int, i: int) -> np.ndarray:
    v = zeros(1, n)[0]
    v[i] = 1
    return v


def _quotient_path_algebra(q, p, basis_paths, index, ideal: Subspace, max_dim: int) -> Algebra:
    n = len(basis_paths)
    keep = [i for i in range(n) if i not in set(ideal.pivots)]
    if len(keep) > max_dim:
        raise AlgebraError(f"algebra dimension {len(keep)} exceeds the limit {max_dim}")
    d = len(keep)
    c = zeros(d * d, d).reshape(d, d, d)
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            prod = _path_product(q, basis_paths[i], basis_paths[j])
            if prod is None or prod not in index:
                continue
            vec = ideal.reduce(_unit_vec(n, index[prod]))
            c[a, b] = vec[keep]
    kept = tuple(basis_paths[i] for i in keep)
    labels = tuple(_path_label(q, pth) for pth in kept)
    unit = np.array([1 if pth[0] == "vertex" else 0 for pth in kept], dtype=np.int64)
    alg = algebra_from_structconst(c, p, labels, unit)
    rad = [_unit_vec(d, a) for a, pth in enumerate(kept) if pth[0] == "path"]
    idem = [_unit_vec(d, a) for a, pth in enumerate(kept) if pth[0] == "vertex"]
    # arrow ideal^k must vanish for admissible relations
    alg = with_radical(alg, rad, idem)
    return Algebra(alg.p, alg.structconst, alg.unit, alg.labels, q, alg.radical_basis, alg.idempotents, kept)


def _path_label(q: QuiverPresentation, pth) -> str:
    kind, data = pth
    if kind == "vertex":
        return f"e{data + 1}"
    return "".join(q.arrow_names[i] for i in data) if all(len(q.arrow_names[i]) == 1 for i in data) else "*".join(
        q.arrow_names[i] for i in data
    )


def vertex_index(alg: Algebra, vertex: int) -> int:
    """Basis index of the idempotent of ``vertex`` in a quiver algebra."""
    if alg.paths is None:
        raise AlgebraError("not a quiver algebra")
    return alg.paths.index(("vertex", vertex))


# Small algebras used throughout tests and random instances.


def field_algebra(p: int = 2) -> Algebra:
    return algebra_from_structconst([[[1]]], p, ["1"], [1], radical_basis=[], idempotents=[[1]])


def truncated_polynomial(k: int, p: int = 2, var: str = "eps") -> Algebra:
    """``K[x]/(x^k)`` with basis ``1, x, ..., x^(k-1)``."""
    c = zeros(k * k, k).reshape(k, k, k)
    for i, j in product(range(k), repeat=2):
        if i + j < k:
            c[i, j, i + j] = 1
    if k == 2:
        labels = ["1", var]
    else:
        labels = ["1", var] + [f"{var}{i}" for i in range(2, k)]
    rad = [_unit_vec(k, i) for i in range(1, k)]
    return algebra_from_structconst(c, p, labels, _unit_vec(k, 0), radical_basis=rad, idempotents=[_unit_vec(k, 0)])


def dual_numbers(p: int = 2) -> Algebra:
    return truncated_polynomial(2, p)


def monogenic(coeffs, p: int = 2, var: str = "t") -> Algebra:
    """``K[t]/(f)`` for monic ``f = t^k + coeffs[k-1] t^(k-1) + ... + coeffs[0]``."""
    coeffs = [int(a) % p for a in coeffs]
    k = len(coeffs)
    # multiplication by t on the basis 1..t^(k-1)
    xm = zeros(k, k)
    for i in range(k - 1):
        xm[i + 1, i] = 1
    xm[:, k - 1] = [-a % p for a in coeffs]
    powers = [identity(k)]
    for _ in range(2 * k):
        powers.append(xm @ powers[-1] % p)
    c = zeros(k * k, k).reshape(k, k, k)
    for i, j in product(range(k), repeat=2):
        c[i, j] = powers[i + j][:, 0]
    labels = ["1", var] + [f"{var}{i}" for i in range(2, k)]
    return algebra_from_structconst(c, p, labels[:k], _unit_vec(k, 0))


def gf4() -> Algebra:
    """GF(4) = GF(2)[e]/(e^2 + e + 1), with basis ``1, eps`` and eps^2 = 1 + eps."""
    c = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
    return algebra_from_structconst(c, 2, ["1", "eps"], [1, 0], radical_basis=[], idempotents=[[1, 0]])


def linear_quiver(n: int, relations=(), p: int = 2) -> Algebra:
    """Path algebra of ``1 -> 2 -> ... -> n`` with optional relations."""
    q = QuiverPresentation(n, tuple((i, i + 1) for i in range(n - 1)), tuple(relations))
    return algebra_from_quiver(q, p)


def a2(p: int = 2) -> Algebra:
    return linear_quiver(2, p=p)


def a3(p: int = 2, zero_relation: bool = False) -> Algebra:
    rel = [((1, (1, 0)),)] if zero_relation else []
    return linear_quiver(3, rel, p)


def split_monogenic(p: int = 2) -> Algebra:
    """``K[t]/(t^3 + t^2)``, isomorphic to ``K[t]/(t^2) x K``, with its idempotents."""
    alg = monogenic([0, 0, 1], p)
    # t^4 = t^2 here, so e = t^2 is the idempotent splitting off K
    e = alg.multiply(alg.basis_element(1), alg.basis_element(1))
    if not np.array_equal(alg.multiply(e, e), e):
        raise AlgebraError("t^2 is not idempotent")
    f = (alg.unit - e) % p
    rad = [(alg.basis_element(1) + e) % p]
    return with_radical(alg, rad, [e, f])


def is_associative(a: Algebra) -> bool:
    return _associativity_failure(a.structconst, a.p) is None


def radical_power_dims(a: Algebra) -> list[int]:
    """Dimensions of J, J^2, ... down to 0 for the stored radical J."""
    if a.radical_basis is None:
        raise AlgebraError("no radical known")
    dims = []
    power = Subspace.span(a.radical_basis, a.dim, a.p)
    while power.dim:
        dims.append(power.dim)
        prods = [a.multiply(x, r) for x in power.basis for r in a.radical_basis]
        power = Subspace.span(prods, a.dim, a.p) if prods else Subspace.zero(a.dim, a.p)
    return dims


__all__ = [
    "Algebra",
    "AlgebraError",
    "QuiverPresentation",
    "algebra_from_structconst",
    "algebra_from_quiver",
    "opposite_algebra",
    "multiply_elements",
    "with_radical",
    "field_algebra",
    "dual_numbers",
    "truncated_polynomial",
    "monogenic",
    "gf4",
    "linear_quiver",
    "a2",
    "a3",
    "split_monogenic",
    "vertex_index",
]
