"""Finite-dimensional modules, module maps, Hom spaces, tensor products and duals.

A module stores one matrix per algebra basis element, acting on column
vectors.  For a right module the matrix of ``b`` is ``v -> v.b``, which makes
a right R-module the same data as a left module over the opposite algebra;
``Module.ring`` returns whichever of the two the matrices represent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import Algebra
from .exactlin import Quotient, Subspace, identity, nullspace, rank, solve, zeros

LEFT = "left"
RIGHT = "right"
SIDES = (LEFT, RIGHT)


class ModuleError(ValueError):
    pass


def other_side(side: str) -> str:
    return RIGHT if side == LEFT else LEFT


@dataclass(frozen=True, eq=False)
class Module:
    algebra: Algebra
    side: str
    action: np.ndarray  # (algebra.dim, dim, dim)
    name: str = ""

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def ring(self) -> Algebra:
        return self.algebra if self.side == LEFT else self.algebra.opposite

    def act(self, x) -> np.ndarray:
        """Matrix of the action of the algebra element ``x``."""
        x = self.algebra.element(x)
        return np.tensordot(x, self.action, axes=1) % self.p

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"Module({self.side}, dim={self.dim}{label})"


def make_module(algebra: Algebra, side: str, action, name: str = "", check: bool = True) -> Module:
    """Build a module from action matrices, verifying the module axioms."""
    if side not in SIDES:
        raise ModuleError(f"side must be 'left' or 'right', got {side!r}")
    p = algebra.p
    act = np.asarray(action, dtype=np.int64) % p
    if act.ndim != 3 or act.shape[0] != algebra.dim or act.shape[1] != act.shape[2]:
        raise ModuleError(f"action must have shape ({algebra.dim}, d, d), got {act.shape}")
    act.setflags(write=False)
    m = Module(algebra, side, act, name)
    if check:
        check_module(m)
    return m


def check_module(m: Module):
    p, d = m.p, m.dim
    if d == 0:
        return
    if not np.array_equal(m.act(m.algebra.unit), identity(d)):
        raise ModuleError("the unit does not act as the identity")
    c = m.ring.structconst
    lhs = np.einsum("iab,jbc->ijac", m.action, m.action) % p
    rhs = np.einsum("ijk,kac->ijac", c, m.action) % p
    bad = np.argwhere(np.any(lhs != rhs, axis=(2, 3)))
    if len(bad):
        i, j = (int(t) for t in bad[0])
        raise ModuleError(f"action does not respect the product of basis elements {i} and {j} ({m.side} module)")


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: Module
    target: Module
    matrix: np.ndarray  # (target.dim, source.dim)

    @property
    def p(self) -> int:
        return self.source.p

    def __call__(self, v) -> np.ndarray:
        return (self.matrix @ np.asarray(v, dtype=np.int64)) % self.p

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self o other``."""
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise ModuleError("maps are not composable")
        return ModuleMap(other.source, self.target, (self.matrix @ other.matrix) % self.p)

    def rank(self) -> int:
        return rank(self.matrix, self.p)

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def __repr__(self):
        return f"ModuleMap({self.source!r} -> {self.target!r})"


def _compatible(m: Module, n: Module):
    if m.algebra != n.algebra:
        raise ModuleError("modules over different algebras")
    if m.side != n.side:
        raise ModuleError(f"side mismatch: {m.side} vs {n.side}")


def module_map(source: Module, target: Module, matrix, check: bool = True) -> ModuleMap:
    _compatible(source, target)
    f = np.asarray(matrix, dtype=np.int64).reshape(target.dim, source.dim) % source.p
    if check:
        lhs = np.einsum("ab,tbc->tac", f, source.action) % source.p
        rhs = np.einsum("tab,bc->tac", target.action, f) % source.p
        if not np.array_equal(lhs, rhs):
            raise ModuleError("matrix does not intertwine the actions")
    return ModuleMap(source, target, f)


def zero_module(algebra: Algebra, side: str = LEFT) -> Module:
    return make_module(algebra, side, np.zeros((algebra.dim, 0, 0), dtype=np.int64))


def identity_map(m: Module) -> ModuleMap:
    return ModuleMap(m, m, identity(m.dim))


def zero_map(m: Module, n: Module) -> ModuleMap:
    return ModuleMap(m, n, zeros(n.dim, m.dim))


def free_module(a: Algebra, side: str = LEFT, rank_: int = 1) -> Module:
    """``R^rank`` with the regular action; generator ``i`` is the unit in block ``i``."""
    if rank_ < 0:
        raise ModuleError("rank must be non-negative")
    regular = a.left_mult if side == LEFT else a.right_mult
    d = a.dim * rank_
    act = zeros(a.dim * d, d).reshape(a.dim, d, d)
    for k in range(rank_):
        blk = slice(k * a.dim, (k + 1) * a.dim)
        act[:, blk, blk] = regular
    return make_module(a, side, act, name=f"R^{rank_}", check=False)


def free_generator(a: Algebra, rank_: int, i: int) -> np.ndarray:
    v = zeros(1, a.dim * rank_)[0]
    v[i * a.dim : (i + 1) * a.dim] = a.unit
    return v


def direct_sum(*mods: Module) -> Module:
    if not mods:
        raise ModuleError("empty direct sum")
    for m in mods[1:]:
        _compatible(mods[0], m)
    a = mods[0].algebra
    d = sum(m.dim for m in mods)
    act = zeros(a.dim * d, d).reshape(a.dim, d, d)
    off = 0
    for m in mods:
        act[:, off : off + m.dim, off : off + m.dim] = m.action
        off += m.dim
    return make_module(a, mods[0].side, act, check=False)


def sum_injections(mods) -> list[ModuleMap]:
    total = direct_sum(*mods)
    out, off = [], 0
    for m in mods:
        inc = zeros(total.dim, m.dim)
        inc[off : off + m.dim] = identity(m.dim)
        out.append(ModuleMap(m, total, inc))
        off += m.dim
    return out


def sum_projections(mods) -> list[ModuleMap]:
    return [ModuleMap(i.target, i.source, i.matrix.T.copy()) for i in sum_injections(mods)]


# Submodules and quotients


def generated_submodule(m: Module, vectors) -> Subspace:
    """Span of ``b.v`` over basis elements ``b`` and the given vectors ``v``."""
    v = np.asarray(vectors, dtype=np.int64)
    if v.size == 0 or m.dim == 0:
        return Subspace.zero(m.dim, m.p)
    v = v.reshape(-1, m.dim)
    images = np.einsum("tab,kb->tka", m.action, v).reshape(-1, m.dim) % m.p
    return Subspace.span(images, m.dim, m.p)


def is_submodule(m: Module, s: Subspace) -> bool:
    if s.dim == 0:
        return True
    return s.contains_all(np.einsum("tab,kb->tka", m.action, s.basis).reshape(-1, m.dim) % m.p)


def submodule(m: Module, s: Subspace) -> tuple[Module, ModuleMap]:
    """The submodule on the invariant subspace ``s`` and its inclusion."""
    if not is_submodule(m, s):
        raise ModuleError("subspace is not invariant under the action")
    basis = s.basis.T  # d x k
    piv = list(s.pivots)
    act = np.einsum("tab,bk->tak", m.action, basis)[:, piv, :] % m.p
    sub = make_module(m.algebra, m.side, act, check=False)
    return sub, ModuleMap(sub, m, basis.copy())


def quotient_module(m: Module, s: Subspace) -> tuple[Module, ModuleMap]:
    """``m / s`` and the projection onto it."""
    if not is_submodule(m, s):
        raise ModuleError("subspace is not invariant under the action")
    q = Quotient.of(m.dim, s)
    proj, lift = q.projection_matrix(), q.lift_matrix()
    act = np.einsum("ab,tbc,cd->tad", proj, m.action, lift) % m.p
    quo = make_module(m.algebra, m.side, act, check=False)
    return quo, ModuleMap(m, quo, proj)


def kernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return submodule(f.source, Subspace.kernel(f.matrix, f.p))


def image(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return submodule(f.target, Subspace.column_span(f.matrix, f.p))


def cokernel(f: ModuleMap) -> tuple[Module, ModuleMap]:
    return quotient_module(f.target, Subspace.column_span(f.matrix, f.p))


def map_factor(kind: str, f: ModuleMap) -> tuple[Module, ModuleMap]:
    """Kernel (with inclusion), image (with inclusion) or cokernel (with projection)."""
    try:
        return {"kernel": kernel, "image": image, "cokernel": cokernel}[kind](f)
    except KeyError:
        raise ModuleError(f"unknown factor {kind!r}") from None


def restrict_map(f: ModuleMap, source_inc: ModuleMap | None = None, target_inc: ModuleMap | None = None) -> ModuleMap:
    """Corestrict/restrict ``f`` along inclusions into its source and target."""
    mat = f.matrix
    src = f.source
    if source_inc is not None:
        mat = mat @ source_inc.matrix % f.p
        src = source_inc.source
    tgt = f.target
    if target_inc is not None:
        x = solve(target_inc.matrix, mat, f.p)
        if x is None:
            raise ModuleError("image does not lie in the target submodule")
        mat, tgt = x, target_inc.source
    return ModuleMap(src, tgt, mat % f.p)


# Hom spaces


class HomSpace:
    """The K-space ``Hom_R(source, target)`` inside ``Hom_K`` (row-major flattened)."""

    def __init__(self, source: Module, target: Module):
        _compatible(source, target)
        self.source, self.target = source, target
        self.p = source.p
        self.space = _intertwiners(source, target)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def shape(self) -> tuple[int, int]:
        return self.target.dim, self.source.dim

    @cached_property
    def matrices(self) -> np.ndarray:
        return self.space.basis.reshape(self.dim, *self.shape)

    @property
    def basis(self) -> list[ModuleMap]:
        return [ModuleMap(self.source, self.target, h) for h in self.matrices]

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.basis)

    def element(self, coeffs) -> ModuleMap:
        c = np.asarray(coeffs, dtype=np.int64)
        mat = np.tensordot(c, self.matrices, axes=1) % self.p if self.dim else zeros(*self.shape)
        return ModuleMap(self.source, self.target, mat)

    def coords(self, mats) -> np.ndarray:
        """Coordinates of one or several maps (matrices) in the basis."""
        mats = np.asarray(mats, dtype=np.int64)
        count = 1 if mats.ndim == 2 else mats.shape[0]
        flat = mats.reshape(count, self.shape[0] * self.shape[1])
        if not self.space.contains_all(flat):
            raise ModuleError("matrix is not a module homomorphism")
        out = self.space.coordinates(flat)
        return out[0] if mats.ndim == 2 else out

    def random(self, rng) -> ModuleMap:
        return self.element(rng.integers(0, self.p, size=self.dim))


def _intertwiners(m: Module, n: Module) -> Subspace:
    p, dm, dn = m.p, m.dim, n.dim
    size = dm * dn
    if size == 0:
        return Subspace.zero(size, p)
    basis = identity(size)
    im, in_ = identity(dm), identity(dn)
    for t in range(m.algebra.dim):
        # vec(X A) - vec(B X) with row-major vec
        eq = np.kron(in_, m.action[t].T) - np.kron(n.action[t], im)
        restricted = (eq @ basis.T) % p
        if not np.any(restricted):
            continue
        null = nullspace(restricted, p)
        basis = (null @ basis) % p
        if basis.shape[0] == 0:
            break
    return Subspace.span(basis, size, p)


def hom_space(m: Module, n: Module) -> HomSpace:
    return HomSpace(m, n)


# Duality


def dual_module(m: Module) -> Module:
    """``Hom_K(M, K)`` on the opposite side, in dual-basis coordinates."""
    act = np.ascontiguousarray(m.action.transpose(0, 2, 1))
    return make_module(m.algebra, other_side(m.side), act, name=f"{m.name}*" if m.name else "", check=False)


def dual_map(f: ModuleMap, source_dual: Module | None = None, target_dual: Module | None = None) -> ModuleMap:
    """``f*: N* -> M*`` for ``f: M -> N``."""
    src = source_dual if source_dual is not None else dual_module(f.target)
    tgt = target_dual if target_dual is not None else dual_module(f.source)
    return ModuleMap(src, tgt, f.matrix.T.copy())


def eta_map(m: Module) -> ModuleMap:
    """Evaluation ``x -> (f -> f(x))`` into the double dual, asserted bijective."""
    mm = dual_module(dual_module(m))
    # (eta e_i)(e_j^*) = e_j^*(e_i) = delta_ij
    ev = identity(m.dim)
    f = module_map(m, mm, ev)
    if f.rank() != m.dim:
        raise AssertionError("eta is not bijective")
    return f


# Tensor products


class TensorProduct:
    """``N (x)_R M`` for a right module ``N`` and a left module ``M``.

    Built as ``N (x)_K M`` (basis ``n_a (x) m_b`` at index ``a*dim M + b``)
    modulo the span of ``n_a r (x) m_b - n_a (x) r m_b`` over basis elements ``r``.
    """

    def __init__(self, right: Module, left: Module):
        if right.algebra != left.algebra:
            raise ModuleError("modules over different algebras")
        if right.side != RIGHT or left.side != LEFT:
            raise ModuleError(f"tensor needs (right, left) modules, got ({right.side}, {left.side})")
        self.right, self.left = right, left
        self.p = right.p
        dn, dm = right.dim, left.dim
        size = dn * dm
        if size == 0:
            rel = Subspace.zero(0, self.p)
        else:
            rows = [
                (np.kron(right.action[t], identity(dm)) - np.kron(identity(dn), left.action[t])).T
                for t in range(right.algebra.dim)
            ]
            rel = Subspace.span(np.vstack(rows) % self.p, size, self.p)
        self.relations = rel
        self.quotient = Quotient.of(size, rel)

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def space_dim(self) -> int:
        return self.dim

    def bilinear(self, n, m) -> np.ndarray:
        """Coordinates of the class of ``n (x) m``."""
        return self.quotient.coords(np.kron(np.asarray(n, dtype=np.int64), np.asarray(m, dtype=np.int64)) % self.p)

    def induced(self, g: ModuleMap | None, h: ModuleMap | None, target: "TensorProduct") -> np.ndarray:
        """Matrix of ``g (x) h`` between tensor products (``None`` means identity)."""
        gm = g.matrix if g is not None else identity(self.right.dim)
        hm = h.matrix if h is not None else identity(self.left.dim)
        return self.quotient.induced(np.kron(gm, hm) % self.p, target.quotient)

    def dual_space(self) -> Subspace:
        """Balanced bilinear forms, i.e. ``(N (x)_R M)*`` inside ``(N (x)_K M)*``."""
        return Subspace.span(self.relations.complement_basis(), self.relations.ambient_dim, self.p)


def tensor_over_R(n: Module, m: Module) -> TensorProduct:
    return TensorProduct(n, m)


# Free covers and projectivity


@dataclass(frozen=True)
class FreeCover:
    """An epimorphism from a free (or projective) module onto ``target``."""

    map: ModuleMap
    generators: np.ndarray  # images of the generators, one row each
    vertices: tuple[int, ...] | None = None  # idempotent index per generator when projective-cover built

    @property
    def module(self) -> Module:
        return self.map.source

    @property
    def target(self) -> Module:
        return self.map.target


def greedy_generators(m: Module) -> np.ndarray:
    """Standard basis vectors that generate ``m``, skipping redundant ones."""
    current = Subspace.zero(m.dim, m.p)
    gens = []
    for i in range(m.dim):
        if current.dim == m.dim:
            break
        e = zeros(1, m.dim)[0]
        e[i] = 1
        if current.contains(e):
            continue
        gens.append(e)
        current = current + generated_submodule(m, e)
    return np.array(gens, dtype=np.int64).reshape(len(gens), m.dim)


def free_cover(m: Module, generators="greedy") -> FreeCover:
    """``R^g -> m`` sending generator ``i`` to ``generators[i]``.

    ``generators`` may be ``"basis"`` (every standard basis vector),
    ``"greedy"`` or an explicit array.
    """
    if isinstance(generators, str):
        gens = identity(m.dim) if generators == "basis" else greedy_generators(m)
    else:
        gens = np.asarray(generators, dtype=np.int64).reshape(-1, m.dim) % m.p
    a = m.algebra
    g = gens.shape[0]
    free = free_module(a, m.side, g)
    mat = zeros(m.dim, free.dim)
    for i, x in enumerate(gens):
        # basis element t of block i is b_t acting on generator i
        mat[:, i * a.dim : (i + 1) * a.dim] = (m.action @ x).T % m.p
    f = ModuleMap(free, m, mat)
    if rank(mat, m.p) != m.dim:
        raise ModuleError("generators do not generate the module")
    return FreeCover(f, gens)


def section(f: ModuleMap) -> ModuleMap | None:
    """A module map ``s`` with ``f o s = id``, if one exists."""
    hom = hom_space(f.target, f.source)
    n = f.target.dim
    if hom.dim == 0:
        return identity_map(f.target) if n == 0 else None
    cols = np.array([(f.matrix @ h).reshape(-1) % f.p for h in hom.matrices]).T
    c = solve(cols, identity(n).reshape(-1), f.p)
    return None if c is None else hom.element(c)


def is_projective(m: Module, generators="basis") -> tuple[bool, ModuleMap | None]:
    """Whether ``m`` is projective, with a splitting of a free cover as witness."""
    if m.dim == 0:
        return True, identity_map(m)
    cover = free_cover(m, generators)
    s = section(cover.map)
    return s is not None, s


def random_map(m: Module, n: Module, rng) -> ModuleMap:
    return hom_space(m, n).random(rng)


# Quiver representations


def representation(algebra: Algebra, dims, maps=None, name: str = "") -> Module:
    """Left module of a quiver algebra from vertex dimensions and arrow matrices.

    ``maps[i]`` is the ``dims[target] x dims[source]`` matrix of arrow ``i``.
    """
    q = algebra.provenance
    if q is None or algebra.paths is None:
        raise ModuleError("representation needs a quiver algebra")
    dims = list(dims)
    if len(dims) != q.vertices:
        raise ModuleError(f"need {q.vertices} vertex dimensions")
    offs = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    d = int(offs[-1])
    arrow_mats = []
    for i, (s, t) in enumerate(q.arrows):
        mat = zeros(d, d)
        if maps is not None and maps[i] is not None:
            blk = np.asarray(maps[i], dtype=np.int64).reshape(dims[t], dims[s])
            mat[offs[t] : offs[t + 1], offs[s] : offs[s + 1]] = blk
        arrow_mats.append(mat % algebra.p)
    act = zeros(algebra.dim * d, d).reshape(algebra.dim, d, d)
    for k, (kind, data) in enumerate(algebra.paths):
        if kind == "vertex":
            act[k, offs[data] : offs[data + 1], offs[data] : offs[data + 1]] = identity(dims[data])
        else:
            mat = identity(d)
            for arrow in data:
                mat = mat @ arrow_mats[arrow] % algebra.p
            act[k] = mat
    return make_module(algebra, LEFT, act, name=name)


def simple_module(algebra: Algebra, vertex: int) -> Module:
    q = algebra.provenance
    dims = [1 if v == vertex else 0 for v in range(q.vertices)]
    return representation(algebra, dims, name=f"S{vertex + 1}")


def interval_module(algebra: Algebra, lo: int, hi: int) -> Module:
    """Indecomposable of a linear quiver supported on vertices ``lo..hi`` (0-based).

    Arrow maps inside the interval are identities; the relations of the
    algebra must allow this.
    """
    q = algebra.provenance
    dims = [1 if lo <= v <= hi else 0 for v in range(q.vertices)]
    maps = [[[1]] if lo <= s and t <= hi else None for s, t in q.arrows]
    return representation(algebra, dims, maps, name=f"M[{lo + 1},{hi + 1}]")


def indecomposable_projective(algebra: Algebra, idempotent, side: str = LEFT) -> tuple[Module, ModuleMap]:
    """``R e`` (left) or ``e R`` (right) as a submodule of the regular module."""
    e = algebra.element(idempotent)
    reg = free_module(algebra, side, 1)
    sub, inc = submodule(reg, generated_submodule(reg, e))
    return sub, inc


def regular_module(algebra: Algebra, side: str = LEFT) -> Module:
    return free_module(algebra, side, 1)
