"""pp formulas in matrix normal form, their solution sets and duals.

A formula on ``n`` free and ``m`` bound variables is ``exists y (A x = B y)``
with ``A`` an ``l x n`` and ``B`` an ``l x m`` matrix of algebra elements.
Equation ``i`` reads ``sum_j A_ij x_j = sum_k B_ik y_k`` where the
coefficients act on the left for left-module formulas and on the right
(``x_j . A_ij``) for right-module formulas.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra
from .exactlin import Quotient, Subspace, solve, zeros
from .modules import (
    LEFT,
    Module,
    ModuleMap,
    free_generator,
    free_module,
    generated_submodule,
    hom_space,
    other_side,
    quotient_module,
)


class FormulaError(ValueError):
    pass


class NotAPair(ValueError):
    """Raised when the smaller formula of a pair is not implied by the larger."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class PpFormula:
    algebra: Algebra
    side: str
    A: np.ndarray  # (l, n, algebra.dim)
    B: np.ndarray  # (l, m, algebra.dim)

    def __post_init__(self):
        p, d = self.algebra.p, self.algebra.dim
        a = np.asarray(self.A, dtype=np.int64) % p
        b = np.asarray(self.B, dtype=np.int64) % p
        if a.ndim != 3 or b.ndim != 3 or a.shape[2] != d or b.shape[2] != d or a.shape[0] != b.shape[0]:
            raise FormulaError(f"inconsistent formula shapes {a.shape} and {b.shape} for algebra dim {d}")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)

    @property
    def n(self) -> int:
        return self.A.shape[1]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    @property
    def l(self) -> int:  # noqa: E743
        return self.A.shape[0]

    def same_matrices(self, other: "PpFormula") -> bool:
        return (
            self.side == other.side
            and self.algebra == other.algebra
            and np.array_equal(self.A, other.A)
            and np.array_equal(self.B, other.B)
        )

    def normalized(self) -> "PpFormula":
        """Drop equations whose coefficients all vanish."""
        keep = [i for i in range(self.l) if np.any(self.A[i]) or np.any(self.B[i])]
        return PpFormula(self.algebra, self.side, self.A[keep], self.B[keep])

    def conjoin(self, other: "PpFormula") -> "PpFormula":
        """``self and other`` on the same free variables; bound variables are kept apart."""
        _check_compatible(self, other)
        a = np.concatenate([self.A, other.A], axis=0)
        d = self.algebra.dim
        b = zeros(self.l + other.l, (self.m + other.m) * d).reshape(self.l + other.l, self.m + other.m, d)
        b[: self.l, : self.m] = self.B
        b[self.l :, self.m :] = other.B
        return PpFormula(self.algebra, self.side, a, b)

    def __str__(self):
        from .dsl import unparse

        return unparse(self)

    def __repr__(self):
        return f"PpFormula({self.side}, n={self.n}, m={self.m}, l={self.l}: {self})"


def _check_compatible(phi: PpFormula, psi: PpFormula):
    if phi.algebra != psi.algebra:
        raise FormulaError("formulas over different algebras")
    if phi.side != psi.side:
        raise FormulaError(f"side mismatch: {phi.side} vs {psi.side}")
    if phi.n != psi.n:
        raise FormulaError(f"arity mismatch: {phi.n} vs {psi.n} free variables")


def _check_module(phi: PpFormula, module: Module):
    if module.algebra != phi.algebra:
        raise FormulaError("module and formula are over different algebras")
    if module.side != phi.side:
        raise FormulaError(f"{phi.side} formula evaluated on a {module.side} module")


def tautology(algebra: Algebra, n: int = 1, side: str = LEFT) -> PpFormula:
    """``x = x``: no equations, no bound variables."""
    d = algebra.dim
    return PpFormula(algebra, side, zeros(0, n * d).reshape(0, n, d), zeros(0, 0).reshape(0, 0, d))


def zero_formula(algebra: Algebra, n: int = 1, side: str = LEFT) -> PpFormula:
    """``x = 0``: ``A`` the identity, no bound variables."""
    d = algebra.dim
    a = zeros(n * n, d).reshape(n, n, d)
    for i in range(n):
        a[i, i] = algebra.unit
    return PpFormula(algebra, side, a, zeros(n, 0).reshape(n, 0, d))


def divisibility(algebra: Algebra, r, side: str = LEFT) -> PpFormula:
    """``exists y (x = r y)`` (or ``x = y r`` on the right)."""
    d = algebra.dim
    a = algebra.unit.reshape(1, 1, d)
    return PpFormula(algebra, side, a, algebra.element(r).reshape(1, 1, d))


def annihilation(algebra: Algebra, r, side: str = LEFT) -> PpFormula:
    """``r x = 0`` (or ``x r = 0`` on the right)."""
    d = algebra.dim
    return PpFormula(algebra, side, algebra.element(r).reshape(1, 1, d), zeros(1, 0).reshape(1, 0, d))


def system_matrix(phi: PpFormula, module: Module) -> np.ndarray:
    """The ``(l d) x ((n + m) d)`` matrix ``[rho(A) | -rho(B)]``."""
    _check_module(phi, module)
    d = module.dim
    ra = np.tensordot(phi.A, module.action, axes=([2], [0]))  # l, n, d, d
    rb = np.tensordot(phi.B, module.action, axes=([2], [0]))
    blocks = np.concatenate([ra, -rb], axis=1)  # l, n+m, d, d
    return blocks.transpose(0, 2, 1, 3).reshape(phi.l * d, (phi.n + phi.m) * d) % module.p


def solution_set(phi: PpFormula, module: Module) -> Subspace:
    """``phi(M)`` as a subspace of ``M^n`` (coordinate ``j*dim M + c`` is entry ``c`` of ``x_j``)."""
    _check_module(phi, module)
    d, p = module.dim, module.p
    nd = phi.n * d
    if phi.l == 0 or d == 0:
        return Subspace.whole(nd, p)
    sols = Subspace.kernel(system_matrix(phi, module), p)
    return Subspace.span(sols.basis[:, :nd], nd, p)


def witness(phi: PpFormula, module: Module, tuple_) -> np.ndarray | None:
    """Bound-variable values ``y`` (flattened) with ``A x = B y``, or ``None``."""
    _check_module(phi, module)
    d = module.dim
    x = np.asarray(tuple_, dtype=np.int64).reshape(-1)
    if phi.m == 0 or d == 0:
        sysm = system_matrix(phi, module)
        return zeros(1, phi.m * d)[0] if not np.any(sysm @ x % module.p) else None
    sysm = system_matrix(phi, module)
    ax = sysm[:, : phi.n * d] @ x % module.p
    # A x - B y = 0  <=>  B y = A x
    return solve(-sysm[:, phi.n * d :] % module.p, ax, module.p)


@dataclass(frozen=True, eq=False)
class FreeRealization:
    """``C_phi`` with its distinguished tuple (one row per free variable)."""

    formula: PpFormula
    module: Module
    tuple: np.ndarray  # (n, dim C)
    projection: ModuleMap  # R^(n+m) -> C_phi
    lift: np.ndarray  # right inverse of the projection (coset representatives)

    @property
    def flat_tuple(self) -> np.ndarray:
        return self.tuple.reshape(-1)

    def evaluation_image(self, target: Module) -> Subspace:
        """Image of ``Hom(C, M) -> M^n``, ``h -> (h(c_1), ..., h(c_n))``."""
        hom = hom_space(self.module, target)
        nd = self.formula.n * target.dim
        if hom.dim == 0:
            return Subspace.zero(nd, target.p)
        images = np.einsum("kab,jb->kja", hom.matrices, self.tuple).reshape(hom.dim, nd) % target.p
        return Subspace.span(images, nd, target.p)

    def evaluation_matrix(self, hom) -> np.ndarray:
        """``(n dim M) x dim Hom`` matrix of the evaluation on a Hom basis."""
        if hom.dim == 0:
            return zeros(self.formula.n * hom.target.dim, 0)
        return np.einsum("kab,jb->jak", hom.matrices, self.tuple).reshape(-1, hom.dim) % hom.p


def relation_elements(phi: PpFormula) -> np.ndarray:
    """Rows of ``[A | -B]`` as elements of the free module on ``n + m`` generators."""
    rows = np.concatenate([phi.A, -phi.B], axis=1) % phi.algebra.p
    return rows.reshape(phi.l, (phi.n + phi.m) * phi.algebra.dim)


def free_realization(phi: PpFormula) -> FreeRealization:
    """``C_phi = R^(n+m) / <rows of [A | -B]>`` with the classes of the first ``n`` generators."""
    alg = phi.algebra
    k = phi.n + phi.m
    free = free_module(alg, phi.side, k)
    rel = generated_submodule(free, relation_elements(phi))
    c, proj = quotient_module(free, rel)
    gens = np.array([free_generator(alg, k, j) for j in range(phi.n)], dtype=np.int64).reshape(phi.n, free.dim)
    tup = (gens @ proj.matrix.T) % alg.p if phi.n else zeros(0, c.dim)
    lift = Quotient.of(free.dim, rel).lift_matrix()
    return FreeRealization(phi, c, tup.reshape(phi.n, c.dim), proj, lift)


def implies(phi: PpFormula, psi: PpFormula) -> bool:
    """``phi(M) <= psi(M)`` for every module ``M``: the tuple of ``C_phi`` satisfies ``psi``."""
    _check_compatible(phi, psi)
    real = free_realization(phi)
    return solution_set(psi, real.module).contains(real.flat_tuple)


def equivalent(phi: PpFormula, psi: PpFormula) -> bool:
    return implies(phi, psi) and implies(psi, phi)


def dual_formula(phi: PpFormula) -> PpFormula:
    """``exists y (x = y A and y B = 0)`` on the opposite side.

    The new bound variables are one per equation of ``phi``; free variable
    ``j`` equals ``sum_i y_i A_ij`` and each old bound variable ``k`` gives the
    equation ``0 = sum_i y_i B_ik``.
    """
    alg = phi.algebra
    n, m, l, d = phi.n, phi.m, phi.l, alg.dim
    a = zeros((n + m) * n, d).reshape(n + m, n, d)
    for j in range(n):
        a[j, j] = alg.unit
    b = np.concatenate([phi.A.transpose(1, 0, 2), phi.B.transpose(1, 0, 2)], axis=0).reshape(n + m, l, d)
    return PpFormula(alg, other_side(phi.side), a, b)


@dataclass(frozen=True, eq=False)
class PpPair:
    """``phi / psi`` with ``psi <= phi`` certified by the free realization of ``psi``."""

    phi: PpFormula
    psi: PpFormula
    certificate: np.ndarray | None = None  # witness of the tuple of C_psi in phi(C_psi)

    @property
    def algebra(self) -> Algebra:
        return self.phi.algebra

    @property
    def side(self) -> str:
        return self.phi.side

    @property
    def n(self) -> int:
        return self.phi.n

    def dual(self) -> "PpPair":
        """``D psi / D phi``."""
        return make_pair(dual_formula(self.psi), dual_formula(self.phi))

    def __repr__(self):
        return f"PpPair({self.phi} / {self.psi})"


def make_pair(phi: PpFormula, psi: PpFormula) -> PpPair:
    _check_compatible(phi, psi)
    real = free_realization(psi)
    y = witness(phi, real.module, real.flat_tuple)
    if y is None:
        raise NotAPair(
            "the free realization of the second formula does not satisfy the first",
            witness=real,
        )
    return PpPair(phi, psi, y)
