"""Projective resolutions, Ext, transpose and AR translate, stable Hom.

Projective modules are handled as sums ``P = (+)_i R e_i`` sitting inside a
free module ``R^g`` (``e_i`` the unit when ``P`` is free).  A map out of
``P`` is fixed by the images ``x_i`` of the generators ``e_i``, with
``x_i`` in ``e_i M``; that turns ``Hom(P, M)`` into a subspace of ``M^g``
and keeps Ext computations small.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra
from .exactlin import Quotient, Subspace, rank, solve, zeros
from .modules import (
    LEFT,
    HomSpace,
    Module,
    ModuleError,
    ModuleMap,
    TensorProduct,
    cokernel,
    dual_map,
    dual_module,
    free_module,
    generated_submodule,
    greedy_generators,
    hom_space,
    kernel,
    make_module,
    other_side,
    submodule,
)


class NoRadicalKnown(ModuleError):
    pass


@dataclass(frozen=True, eq=False)
class ProjectiveCover:
    """``P = (+) R e_i -> target`` with generator ``e_i`` sent to ``images[i]``."""

    idempotents: np.ndarray  # (g, algebra.dim)
    images: np.ndarray  # (g, target.dim)
    inclusion: ModuleMap  # P -> R^g
    map: ModuleMap  # P -> target

    @property
    def module(self) -> Module:
        return self.map.source

    @property
    def target(self) -> Module:
        return self.map.target

    @property
    def rank(self) -> int:
        return self.idempotents.shape[0]


def _images_matrix(target: Module, images: np.ndarray) -> np.ndarray:
    """``target.dim x (g dim R)``: block ``i`` column ``t`` is ``b_t`` acting on ``images[i]``."""
    a = target.algebra
    g = images.shape[0]
    mat = zeros(target.dim, g * a.dim)
    for i, x in enumerate(images):
        mat[:, i * a.dim : (i + 1) * a.dim] = (target.action @ x).T
    return mat % target.p


def cover_from_generators(target: Module, idempotents, images) -> ProjectiveCover:
    a, p = target.algebra, target.p
    idem = np.asarray(idempotents, dtype=np.int64).reshape(-1, a.dim) % p
    g = idem.shape[0]
    imgs = np.asarray(images, dtype=np.int64).reshape(g, target.dim) % p
    free = free_module(a, target.side, g)
    gens = zeros(g, free.dim)
    for i, e in enumerate(idem):
        gens[i, i * a.dim : (i + 1) * a.dim] = e
    proj, inc = submodule(free, generated_submodule(free, gens))
    mat = _images_matrix(target, imgs) @ inc.matrix % p
    f = ModuleMap(proj, target, mat)
    if rank(mat, p) != target.dim:
        raise ModuleError("generators do not generate the module")
    return ProjectiveCover(idem, imgs, inc, f)


def radical_submodule(m: Module) -> Subspace:
    a = m.algebra
    if a.radical_basis is None:
        raise NoRadicalKnown("no radical known for this algebra; attach one with with_radical")
    if m.dim == 0 or a.radical_basis.shape[0] == 0:
        return Subspace.zero(m.dim, m.p)
    mats = np.tensordot(a.radical_basis, m.action, axes=([1], [0])) % m.p  # r, d, d
    cols = mats.transpose(0, 2, 1).reshape(-1, m.dim)
    return Subspace.span(cols, m.dim, m.p)


def top_dim(m: Module) -> int:
    return m.dim - radical_submodule(m).dim


def projective_cover(m: Module) -> ProjectiveCover:
    """Projective cover: generators lift a basis of the top, one primitive idempotent each."""
    a = m.algebra
    if not a.has_radical:
        raise NoRadicalKnown("no radical known for this algebra; attach one with with_radical")
    current = radical_submodule(m)
    idem, imgs = [], []
    for e in a.idempotents:
        if current.dim == m.dim:
            break
        ev = m.act(e)
        for x in Subspace.column_span(ev, m.p).basis:
            if current.contains(x):
                continue
            idem.append(e)
            imgs.append(x)
            current = current + generated_submodule(m, x)
            if current.dim == m.dim:
                break
    return cover_from_generators(m, np.array(idem).reshape(-1, a.dim), np.array(imgs).reshape(len(idem), m.dim))


def greedy_free_cover(m: Module) -> ProjectiveCover:
    gens = greedy_generators(m)
    units = np.tile(m.algebra.unit, (gens.shape[0], 1))
    return cover_from_generators(m, units, gens)


def minimal_free_cover(m: Module) -> ProjectiveCover:
    """Free cover of least rank: top lifts at distinct vertices share a generator."""
    pc = projective_cover(m)
    a = m.algebra
    slots: list[list] = []
    for e, x in zip(pc.idempotents, pc.images):
        v = next(i for i, f in enumerate(a.idempotents) if np.array_equal(e, f))
        placed = False
        for slot in slots:
            if v not in slot[0]:
                slot[0].add(v)
                slot[1] += x
                placed = True
                break
        if not placed:
            slots.append([{v}, x.copy()])
    gens = np.array([slot[1] % m.p for slot in slots], dtype=np.int64).reshape(len(slots), m.dim)
    return cover_from_generators(m, np.tile(a.unit, (len(slots), 1)), gens)


def cover(m: Module, projective: bool = False) -> ProjectiveCover:
    """A free cover (rank-minimal when the radical is known), or the projective cover."""
    if projective:
        return projective_cover(m)
    return minimal_free_cover(m) if m.algebra.has_radical else greedy_free_cover(m)


@dataclass(frozen=True, eq=False)
class FreeResolution:
    """``... -> P_1 -> P_0 -> N -> 0`` with each ``P_k`` a sum of ``R e``'s.

    ``covers[0]`` is the augmentation; ``covers[k]`` covers the k-th syzygy and
    ``differentials[k-1]`` is ``P_k -> P_{k-1}``.
    """

    target: Module
    covers: list[ProjectiveCover]
    differentials: list[ModuleMap]
    syzygies: list[ModuleMap] = field(default_factory=list)  # inclusions ker_k -> P_k

    @property
    def augmentation(self) -> ModuleMap:
        return self.covers[0].map

    @property
    def length(self) -> int:
        return len(self.differentials)

    @property
    def modules(self) -> list[Module]:
        return [c.module for c in self.covers]

    def is_exact(self) -> bool:
        p = self.target.p
        maps = [self.augmentation.matrix] + [d.matrix for d in self.differentials]
        if rank(maps[0], p) != self.target.dim:
            return False
        for k in range(1, len(maps)):
            prev, cur = maps[k - 1], maps[k]
            if np.any(prev @ cur % p):
                return False
            if rank(cur, p) != prev.shape[1] - rank(prev, p):
                return False
        return True


def free_resolution(n: Module, length: int, projective: bool = False, cover_fn=None) -> FreeResolution:
    """Resolution with ``length`` differentials.

    Terms are free unless ``projective`` is set; ``cover_fn`` overrides the
    choice of cover at every stage.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    make = cover_fn or (lambda m: cover(m, projective))
    first = make(n)
    covers, diffs, syz = [first], [], []
    prev = first.map
    for _ in range(length):
        ker, inc = kernel(prev)
        syz.append(inc)
        if ker.dim == 0:
            c = cover_from_generators(ker, zeros(0, n.algebra.dim), zeros(0, ker.dim))
        else:
            c = make(ker)
        d = ModuleMap(c.module, prev.source, inc.matrix @ c.map.matrix % n.p)
        covers.append(c)
        diffs.append(d)
        prev = d
    return FreeResolution(n, covers, diffs, syz)


def _cochain_space(c: ProjectiveCover, m: Module) -> Subspace:
    """``Hom(P, M)`` as ``{(x_i) : x_i in e_i M}`` inside ``M^g``."""
    if c.rank == 0 or m.dim == 0:
        return Subspace.zero(c.rank * m.dim, m.p)
    blocks = [m.act(e) for e in c.idempotents]
    cols = np.concatenate([np.kron(np.eye(c.rank, dtype=np.int64)[i][:, None], b) for i, b in enumerate(blocks)], axis=1)
    return Subspace.column_span(cols % m.p, m.p)


def _coboundary(d: ModuleMap, src: ProjectiveCover, dst: ProjectiveCover, m: Module) -> np.ndarray:
    """``Hom(P_k, M) -> Hom(P_{k+1}, M)`` on ``M^{g_k} -> M^{g_{k+1}}`` for ``d: P_{k+1} -> P_k``."""
    a, p = m.algebra, m.p
    gk, gk1 = dst.rank, src.rank
    out = zeros(gk1 * m.dim, gk * m.dim)
    # generator j of P_{k+1} in ambient R^{g_{k+1}} coordinates, mapped by d into R^{g_k}
    for j in range(gk1):
        gen = zeros(1, gk1 * a.dim)[0]
        gen[j * a.dim : (j + 1) * a.dim] = src.idempotents[j]
        local = _solve_in(src.inclusion, gen)
        img = dst.inclusion.matrix @ (d.matrix @ local % p) % p
        for i in range(gk):
            coeff = img[i * a.dim : (i + 1) * a.dim]
            out[j * m.dim : (j + 1) * m.dim, i * m.dim : (i + 1) * m.dim] = m.act(coeff)
    return out % p


def _solve_in(inc: ModuleMap, v: np.ndarray) -> np.ndarray:
    x = solve(inc.matrix, v, inc.p)
    if x is None:
        raise ModuleError("vector is not in the submodule")
    return x


def ext_dims(n: Module, m: Module, max_degree: int, resolution: FreeResolution | None = None) -> list[int]:
    """``[dim Ext^0(N, M), ..., dim Ext^max_degree(N, M)]``."""
    if n.algebra != m.algebra or n.side != m.side:
        raise ModuleError("Ext needs modules over the same algebra and side")
    res = resolution or free_resolution(n, max_degree + 1)
    if res.length < max_degree + 1:
        raise ValueError("resolution is too short")
    spaces = [_cochain_space(c, m) for c in res.covers[: max_degree + 2]]
    cobs = [_coboundary(res.differentials[k], res.covers[k + 1], res.covers[k], m) for k in range(max_degree + 1)]
    dims = []
    prev_rank = 0
    for k in range(max_degree + 1):
        sp = spaces[k]
        if sp.dim == 0:
            ker = 0
            r = 0
        else:
            restricted = cobs[k] @ sp.basis.T % m.p
            r = rank(restricted, m.p)
            ker = sp.dim - r
        dims.append(ker - prev_rank)
        prev_rank = r
    return dims


def ext_dim(n: Module, m: Module, degree: int) -> int:
    if degree < 0:
        raise ValueError("degree must be non-negative")
    return ext_dims(n, m, degree)[degree]


def ext_dim_via_hom(n: Module, m: Module, degree: int) -> int:
    """Same as :func:`ext_dim`, through full Hom spaces and greedy free covers."""
    res = free_resolution(n, degree + 1, cover_fn=greedy_free_cover)
    mods = res.modules
    p = m.p

    def induced(d: ModuleMap) -> tuple[HomSpace, HomSpace, np.ndarray]:
        src, dst = hom_space(d.target, m), hom_space(d.source, m)
        if src.dim == 0:
            return src, dst, zeros(dst.dim, 0)
        imgs = src.matrices @ d.matrix % p
        return src, dst, dst.coords(imgs).T.reshape(dst.dim, src.dim)

    homs = [hom_space(mods[k], m) for k in range(degree + 1)]
    d_in = induced(res.differentials[degree])[2]  # Hom(P_deg) -> Hom(P_deg+1)
    ker = homs[degree].dim - rank(d_in, p) if homs[degree].dim else 0
    if degree == 0:
        return ker
    d_out = induced(res.differentials[degree - 1])[2]
    return ker - (rank(d_out, p) if d_out.size else 0)


# Minimal presentations, transpose and AR translate


@dataclass(frozen=True, eq=False)
class MinimalPresentation:
    p1: ProjectiveCover  # covers the kernel of p0
    p0: ProjectiveCover
    differential: ModuleMap  # P1 -> P0
    kernel_in_radical: bool
    syzygy_kernel_in_radical: bool


def minimal_presentation(n: Module) -> MinimalPresentation:
    """``P1 -> P0 -> N -> 0`` with both covers minimal, and the radical-containment certificate."""
    if not n.algebra.has_radical:
        raise NoRadicalKnown("minimal presentations need a known radical")
    p0 = projective_cover(n)
    ker, inc = kernel(p0.map)
    if ker.dim:
        p1 = projective_cover(ker)
    else:
        p1 = cover_from_generators(ker, zeros(0, n.algebra.dim), zeros(0, ker.dim))
    d = ModuleMap(p1.module, p0.module, inc.matrix @ p1.map.matrix % n.p)
    k0 = Subspace.kernel(p0.map.matrix, n.p)
    k1 = Subspace.kernel(p1.map.matrix, n.p)
    cert0 = k0.issubspace(radical_submodule(p0.module))
    cert1 = k1.issubspace(radical_submodule(p1.module)) if p1.module.dim else True
    return MinimalPresentation(p1, p0, d, cert0, cert1)


@dataclass(frozen=True, eq=False)
class TDual:
    """``M^t = Hom_R(M, R)`` on the other side, with the Hom basis it is written in."""

    module: Module
    hom: HomSpace


def t_dual(m: Module) -> TDual:
    a = m.algebra
    reg = free_module(a, m.side, 1)
    hom = hom_space(m, reg)
    # left M: (f r)(x) = f(x) r; right M: (r f)(x) = r f(x)
    mult = a.right_mult if m.side == LEFT else a.left_mult
    if hom.dim:
        imgs = np.einsum("tab,kbc->tkac", mult, hom.matrices) % a.p
        act = np.stack([hom.coords(imgs[t]).T for t in range(a.dim)]).reshape(a.dim, hom.dim, hom.dim)
    else:
        act = np.zeros((a.dim, 0, 0), dtype=np.int64)
    return TDual(make_module(a, other_side(m.side), act), hom)


def t_dual_map(f: ModuleMap, src: TDual | None = None, dst: TDual | None = None) -> tuple[ModuleMap, TDual, TDual]:
    """``f^t: N^t -> M^t`` (precomposition) for ``f: M -> N``."""
    tn = src or t_dual(f.target)
    tm = dst or t_dual(f.source)
    if tn.hom.dim == 0:
        mat = zeros(tm.hom.dim, 0)
    else:
        imgs = tn.hom.matrices @ f.matrix % f.p
        mat = tm.hom.coords(imgs).T.reshape(tm.hom.dim, tn.hom.dim) if tm.hom.dim else zeros(0, tn.hom.dim)
    return ModuleMap(tn.module, tm.module, mat), tn, tm


@dataclass(frozen=True, eq=False)
class TransposeResult:
    transpose: Module  # other side
    tau: Module  # same side as the input
    presentation: MinimalPresentation
    projective_input: bool


def transpose_and_tau(n: Module) -> TransposeResult:
    """``Tr N = coker(P0^t -> P1^t)`` and ``tau N = (Tr N)*``."""
    pres = minimal_presentation(n)
    dt, _, _ = t_dual_map(pres.differential)
    tr, _ = cokernel(dt)
    tau = dual_module(tr)
    return TransposeResult(tr, tau, pres, pres.p1.module.dim == 0 and n.dim > 0 and _is_proj(pres))


def _is_proj(pres: MinimalPresentation) -> bool:
    return Subspace.kernel(pres.p0.map.matrix, pres.p0.map.p).dim == 0


def tau(n: Module) -> Module:
    return transpose_and_tau(n).tau


# Stable Hom


class StableHomValue(Quotient):
    """``Hom(M, N)`` modulo maps through a projective (``projective``) or an injective."""

    def __init__(self, total: Subspace, relations: Subspace, flavor: str):
        super().__init__(total, relations)
        self.flavor = flavor


def _factoring_space(hom: HomSpace, mats: np.ndarray) -> Subspace:
    amb = hom.space.ambient_dim
    if mats.shape[0] == 0:
        return Subspace.zero(amb, hom.p)
    return Subspace.span(mats.reshape(-1, amb) % hom.p, amb, hom.p)


def injective_envelope_map(m: Module) -> ModuleMap:
    """``M -> (P)*`` for a cover ``P -> M*`` on the other side; the target is injective."""
    c = cover(dual_module(m))
    # c*: M** = M -> P*
    return dual_map(c.map, source_dual=m)


def stable_hom(m: Module, n: Module, flavor: str = "projective") -> StableHomValue:
    hom = hom_space(m, n)
    p = m.p
    if flavor == "projective":
        c = cover(n)
        through = hom_space(m, c.module)
        mats = c.map.matrix @ through.matrices % p if through.dim else zeros(0, n.dim * m.dim)
    elif flavor == "injective":
        iota = injective_envelope_map(m)
        e0 = iota.target
        through = hom_space(e0, n)
        mats = through.matrices @ iota.matrix % p if through.dim else zeros(0, n.dim * m.dim)
    else:
        raise ValueError(f"flavor must be 'projective' or 'injective', got {flavor!r}")
    return StableHomValue(hom.space, _factoring_space(hom, np.asarray(mats)), flavor)


@dataclass(frozen=True, eq=False)
class TDualTensorMap:
    tensor: TensorProduct
    matrix: np.ndarray  # flattened Hom_K(M, N) x tensor coordinates
    image: Subspace
    hom: HomSpace

    @property
    def cokernel_dim(self) -> int:
        return self.hom.dim - self.image.dim


def t_dual_tensor_map(m: Module, n: Module) -> TDualTensorMap:
    """``M^t (x)_R N -> Hom(M, N)``, ``f (x) y -> (x -> f(x) y)``, for left modules."""
    if m.side != LEFT or n.side != LEFT:
        raise ModuleError("t_dual_tensor_map is defined for left modules")
    p = m.p
    td = t_dual(m)
    ten = TensorProduct(td.module, n)
    k = td.hom.dim
    # column (i, b): x -> rho_N(f_i(x)) e_b, flattened row-major as (N row a, M col c)
    if k and n.dim and m.dim:
        big = np.einsum("itc,tab->acib", td.hom.matrices, n.action).reshape(n.dim * m.dim, k * n.dim) % p
    else:
        big = zeros(n.dim * m.dim, k * n.dim)
    if np.any(big @ ten.relations.basis.T % p):
        raise AssertionError("evaluation map does not vanish on the tensor relations")
    mat = big @ ten.quotient.lift_matrix() % p
    hom = hom_space(m, n)
    img = Subspace.column_span(mat, p) if mat.size else Subspace.zero(n.dim * m.dim, p)
    if not img.issubspace(hom.space):
        raise AssertionError("evaluation map lands outside Hom(M, N)")
    return TDualTensorMap(ten, mat, img, hom)


# Injective-coresolution shift for Ext


@dataclass(frozen=True, eq=False)
class ExtShift:
    """``0 -> A -> P* -> L* -> 0`` built from a cover ``P -> A*`` with kernel ``L``."""

    a: Module
    p_dual: Module
    l_dual: Module
    into: ModuleMap  # A -> P*
    onto: ModuleMap  # P* -> L*


def ext_shift(a_mod: Module) -> ExtShift:
    c = cover(dual_module(a_mod))
    l_mod, l_inc = kernel(c.map)
    p_dual = dual_module(c.module)
    l_dual = dual_module(l_mod)
    into = dual_map(c.map, source_dual=a_mod, target_dual=p_dual)
    onto = dual_map(l_inc, source_dual=p_dual, target_dual=l_dual)
    return ExtShift(a_mod, p_dual, l_dual, into, onto)


def hom_sequence_exact(shift: ExtShift, m: Module) -> tuple[bool, int]:
    """Exactness of ``0 -> (M, A) -> (M, P*) -> (M, L*)``; also returns ``dim`` of the last cokernel."""
    p = m.p
    ha, hp, hl = hom_space(m, shift.a), hom_space(m, shift.p_dual), hom_space(m, shift.l_dual)

    def induced(f: ModuleMap, src: HomSpace, dst: HomSpace) -> np.ndarray:
        if src.dim == 0:
            return zeros(dst.dim, 0)
        imgs = f.matrix @ src.matrices % p
        return dst.coords(imgs).T.reshape(dst.dim, src.dim) if dst.dim else zeros(0, src.dim)

    first = induced(shift.into, ha, hp)
    second = induced(shift.onto, hp, hl)
    r1 = rank(first, p) if first.size else 0
    r2 = rank(second, p) if second.size else 0
    composite_zero = not np.any(second @ first % p) if first.size and second.size else True
    exact = r1 == ha.dim and composite_zero and hp.dim - r2 == r1
    return exact, hl.dim - r2


def simple_modules(alg: Algebra, side: str = LEFT) -> list[Module]:
    """Tops of the indecomposable projectives ``R e`` (or ``e R``)."""
    if not alg.has_radical:
        raise NoRadicalKnown("simple modules need a known radical")
    reg = free_module(alg, side, 1)
    out = []
    for e in alg.idempotents:
        pe, _ = submodule(reg, generated_submodule(reg, e))
        _, rad_inc = submodule(pe, radical_submodule(pe))
        top, _ = cokernel(rad_inc)
        out.append(top)
    return out


__all__ = [
    "NoRadicalKnown",
    "ProjectiveCover",
    "projective_cover",
    "greedy_free_cover",
    "minimal_free_cover",
    "cover",
    "FreeResolution",
    "free_resolution",
    "ext_dim",
    "ext_dims",
    "ext_dim_via_hom",
    "MinimalPresentation",
    "minimal_presentation",
    "t_dual",
    "t_dual_map",
    "transpose_and_tau",
    "tau",
    "StableHomValue",
    "stable_hom",
    "injective_envelope_map",
    "t_dual_tensor_map",
    "ExtShift",
    "ext_shift",
    "hom_sequence_exact",
    "radical_submodule",
    "top_dim",
    "simple_modules",
]
