"""Finitely presented functors, evaluated pointwise.

A functor is never stored as an object of a functor category.  It is a
presentation ``f: A -> B`` plus a variance, and its value at a module is the
cokernel of the induced map of Hom spaces:

* covariant:     ``F(M) = coker(Hom(B, M) -> Hom(A, M))``
* contravariant: ``G(M) = coker(Hom(M, A) -> Hom(M, B))``

Values are :class:`FunctorValue` subquotients of an explicit ambient K-space
(flattened Hom_K matrices, tuples in ``M^n`` or ``(M*)^n``, tensor coordinates)
so that maps between values are honest matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactlin import Quotient, Subspace, annihilator, identity, is_invertible, zeros
from .modules import (
    LEFT,
    RIGHT,
    Module,
    ModuleMap,
    ModuleError,
    TensorProduct,
    direct_sum,
    dual_map,
    dual_module,
    generated_submodule,
    hom_space,
    other_side,
    quotient_module,
    zero_module,
)
from .pp import PpPair, free_realization, solution_set

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"


class FunctorValue(Quotient):
    """``total / relations`` inside an ambient K-space."""

    def __init__(self, total: Subspace, relations: Subspace, label: str = ""):
        super().__init__(total, relations)
        self.label = label

    def dual(self) -> "FunctorValue":
        """The K-dual as ``ann(relations) / ann(total)`` under the standard pairing."""
        return FunctorValue(annihilator(self.relations), annihilator(self.total), f"({self.label})*")

    def __repr__(self):
        return f"FunctorValue({self.label or 'value'}: dim {self.dim} in K^{self.ambient_dim})"


def pairing_matrix(left: Quotient, right: Quotient) -> np.ndarray:
    """Gram matrix ``<l_a, r_b>`` of the quotient representatives (standard dot product)."""
    return (left.reps.basis @ right.reps.basis.T) % left.p


def pairing_well_defined(left: Quotient, right: Quotient) -> bool:
    """Whether the dot product descends to ``left x right`` (relations pair to zero)."""
    p = left.p
    return not (
        np.any(left.relations.basis @ right.total.basis.T % p) or np.any(left.total.basis @ right.relations.basis.T % p)
    )


def is_perfect_pairing(left: Quotient, right: Quotient) -> bool:
    if left.dim != right.dim or not pairing_well_defined(left, right):
        return False
    return is_invertible(pairing_matrix(left, right), left.p) if left.dim else True


# pp pairs


def eval_pp_pair(pair: PpPair, m: Module) -> FunctorValue:
    return FunctorValue(solution_set(pair.phi, m), solution_set(pair.psi, m), "F_pair")


def annihilator_eval(pair: PpPair, m: Module) -> FunctorValue:
    """``ann(psi(M)) / ann(phi(M))`` inside ``(M*)^n`` under ``f.a = sum f_i(a_i)``."""
    return FunctorValue(annihilator(solution_set(pair.psi, m)), annihilator(solution_set(pair.phi, m)), "A_pair")


def tuple_map(n: int, g: ModuleMap) -> np.ndarray:
    """``M^n -> N^n`` applying ``g`` coordinatewise."""
    return np.kron(identity(n), g.matrix) % g.p


def pp_pair_map(pair: PpPair, g: ModuleMap) -> np.ndarray:
    """``F(g): F(M) -> F(N)`` in value coordinates."""
    return eval_pp_pair(pair, g.source).induced(tuple_map(pair.n, g), eval_pp_pair(pair, g.target))


def annihilator_map(pair: PpPair, g: ModuleMap) -> np.ndarray:
    """``A(g): A(N) -> A(M)``, precomposition of functionals with ``g``."""
    gt = np.kron(identity(pair.n), g.matrix.T) % g.p
    return annihilator_eval(pair, g.target).induced(gt, annihilator_eval(pair, g.source))


# Presentations


@dataclass(frozen=True, eq=False)
class FpFunctor:
    variance: str
    presentation: ModuleMap
    # distinguished tuple in the source, set for functors built from pp pairs
    tuple: np.ndarray | None = None

    @property
    def side(self) -> str:
        return self.presentation.source.side

    @property
    def source(self) -> Module:
        return self.presentation.source

    @property
    def target(self) -> Module:
        return self.presentation.target

    def __repr__(self):
        return f"FpFunctor({self.variance}, {self.side}: {self.source.dim} -> {self.target.dim})"


def representable(a: Module, variance: str = COVARIANT) -> FpFunctor:
    """``(A, -)`` (covariant) or ``(-, A)`` (contravariant)."""
    z = zero_module(a.algebra, a.side)
    if variance == COVARIANT:
        return FpFunctor(COVARIANT, ModuleMap(a, z, zeros(0, a.dim)))
    return FpFunctor(CONTRAVARIANT, ModuleMap(z, a, zeros(a.dim, 0)))


def _check_side(f: FpFunctor, m: Module):
    if m.algebra != f.source.algebra:
        raise ModuleError("functor and module are over different algebras")
    if m.side != f.side:
        raise ModuleError(f"functor on {f.side} modules evaluated at a {m.side} module")


def _flat(mats: np.ndarray, rows: int, cols: int) -> np.ndarray:
    mats = np.asarray(mats, dtype=np.int64)
    return mats.reshape(mats.shape[0], rows * cols)


def eval_presentation(f: FpFunctor, m: Module) -> FunctorValue:
    """Cokernel of the induced map of Hom spaces, inside flattened ``Hom_K``."""
    _check_side(f, m)
    pres, p = f.presentation, m.p
    if f.variance == COVARIANT:
        total = hom_space(f.source, m)
        hb = hom_space(f.target, m)
        rel = (hb.matrices @ pres.matrix) % p if hb.dim else zeros(0, m.dim * f.source.dim)
        return FunctorValue(total.space, Subspace.span(_flat(rel, m.dim, f.source.dim), total.space.ambient_dim, p), "coker (B,M)->(A,M)")
    total = hom_space(m, f.target)
    ha = hom_space(m, f.source)
    rel = (pres.matrix @ ha.matrices) % p if ha.dim else zeros(0, f.target.dim * m.dim)
    return FunctorValue(total.space, Subspace.span(_flat(rel, f.target.dim, m.dim), total.space.ambient_dim, p), "coker (M,A)->(M,B)")


def presentation_map(f: FpFunctor, g: ModuleMap) -> np.ndarray:
    """Value map of ``g: M -> N``: ``F(M) -> F(N)`` (covariant) or ``G(N) -> G(M)``."""
    m, n = g.source, g.target
    if f.variance == COVARIANT:
        amb = np.kron(g.matrix, identity(f.source.dim)) % g.p  # H -> g H
        return eval_presentation(f, m).induced(amb, eval_presentation(f, n))
    amb = np.kron(identity(f.target.dim), g.matrix.T) % g.p  # H -> H g
    return eval_presentation(f, n).induced(amb, eval_presentation(f, m))


def pair_to_presentation(pair: PpPair) -> FpFunctor:
    """``f: C_phi -> C_psi (+) coker(pi_phi)`` with ``coker((B,-) -> (A,-)) = F_pair``.

    ``C_phi -> C_psi`` sends the tuple of ``C_phi`` to the tuple of ``C_psi``
    (using the witness stored in the pair) and ``pi_phi: R^n -> C_phi`` sends
    the generators to the tuple of ``C_phi``.
    """
    phi, psi = pair.phi, pair.psi
    alg, p = pair.algebra, pair.algebra.p
    rphi, rpsi = free_realization(phi), free_realization(psi)
    c_phi, c_psi = rphi.module, rpsi.module
    # images of the n + m generators of the free module over C_phi
    wit = np.asarray(pair.certificate, dtype=np.int64).reshape(phi.m, c_psi.dim)
    images = np.vstack([rpsi.tuple, wit]) if phi.m else rpsi.tuple
    free = rphi.projection.source
    h_free = zeros(c_psi.dim, free.dim)
    for i, x in enumerate(images):
        h_free[:, i * alg.dim : (i + 1) * alg.dim] = (c_psi.action @ x).T
    h = (h_free @ rphi.lift) % p
    # pi_phi: R^n -> C_phi; its cokernel is C_phi modulo the submodule the tuple generates
    cok, cok_proj = quotient_module(c_phi, generated_submodule(c_phi, rphi.tuple))
    target = direct_sum(c_psi, cok)
    mat = np.vstack([h, cok_proj.matrix]) % p
    pres = ModuleMap(c_phi, target, mat.reshape(target.dim, c_phi.dim))
    return FpFunctor(COVARIANT, pres, rphi.tuple)


def presentation_witness(f: FpFunctor, pair: PpPair, m: Module) -> np.ndarray:
    """Isomorphism ``coker((B,M) -> (A,M)) -> phi(M)/psi(M)``, evaluation at the tuple.

    Raises ``ValueError`` if evaluation does not induce an isomorphism.
    """
    if f.tuple is None:
        raise ValueError("functor has no distinguished tuple")
    src = eval_presentation(f, m)
    dst = eval_pp_pair(pair, m)
    da = f.source.dim
    # vec(H) -> (H t_1, ..., H t_n)
    ev = np.einsum("ab,jc->jabc", identity(m.dim), f.tuple).reshape(pair.n * m.dim, m.dim * da) % m.p
    mat = src.induced(ev, dst)
    if mat.shape[0] != mat.shape[1] or (mat.size and not is_invertible(mat, m.p)):
        raise ValueError("evaluation at the tuple is not an isomorphism")
    return mat


def dual_functor_eval(f: FpFunctor, m: Module) -> FunctorValue:
    """``F*(M) = F(M)*`` for covariant ``F``."""
    if f.variance != COVARIANT:
        raise ValueError("dual_functor_eval expects a covariant functor")
    return eval_presentation(f, m).dual()


def dual_functor_map(f: FpFunctor, g: ModuleMap) -> np.ndarray:
    """``F*(g): F*(N) -> F*(M)``, the transpose of ``F(g)`` on the dual values."""
    m, n = g.source, g.target
    amb = np.kron(g.matrix, identity(f.source.dim)) % g.p
    return dual_functor_eval(f, n).induced(amb.T.copy(), dual_functor_eval(f, m))


def predual_eval(f: FpFunctor, m: Module) -> FunctorValue:
    """``F_*(M) = F(M*)`` for ``F`` on modules of the side opposite to ``M``."""
    if f.side != other_side(m.side):
        raise ModuleError(f"predual of a functor on {f.side} modules needs a {other_side(f.side)} module")
    return eval_presentation(f, dual_module(m))


def d_functor_eval(f: FpFunctor, n: Module) -> FunctorValue:
    """``(dF)(N) = ker(N (x) A -> N (x) B)`` for covariant ``F`` on left modules, ``N`` right."""
    if f.variance != COVARIANT or f.side != LEFT:
        raise ModuleError("d_functor_eval expects a covariant functor on left modules")
    if n.side != RIGHT:
        raise ModuleError("d_functor_eval needs a right module")
    ta, tb = TensorProduct(n, f.source), TensorProduct(n, f.target)
    mat = ta.induced(None, f.presentation, tb)
    ker = Subspace.kernel(mat.reshape(tb.dim, ta.dim), n.p)
    return FunctorValue(ker, Subspace.zero(ta.dim, n.p), "ker N(x)f")


def annihilator_presentation(pair: PpPair) -> FpFunctor:
    """Contravariant presentation of ``A_pair``: the dual of the presentation of ``F_(D psi / D phi)``.

    With ``f': A' -> B'`` presenting the dual pair on the other side,
    ``G(M) = coker(Hom(M, B'*) -> Hom(M, A'*))``.
    """
    fd = pair_to_presentation(pair.dual())
    return FpFunctor(CONTRAVARIANT, dual_map(fd.presentation))


def g_functor(f: ModuleMap) -> FpFunctor:
    """``G_f = coker((-, A) -> (-, B))``; zero at ``M`` iff ``M`` is projective over ``f``."""
    return FpFunctor(CONTRAVARIANT, f)


__all__ = [
    "COVARIANT",
    "CONTRAVARIANT",
    "FunctorValue",
    "FpFunctor",
    "eval_pp_pair",
    "annihilator_eval",
    "pp_pair_map",
    "annihilator_map",
    "pairing_matrix",
    "pairing_well_defined",
    "is_perfect_pairing",
    "eval_presentation",
    "presentation_map",
    "pair_to_presentation",
    "presentation_witness",
    "dual_functor_eval",
    "dual_functor_map",
    "predual_eval",
    "d_functor_eval",
    "annihilator_presentation",
    "g_functor",
    "representable",
]
